"""Levi (incidence) graph of a rank-3 matroid and its one-chip-per-element divisor."""

from __future__ import annotations

from dataclasses import dataclass

from .divisors import rank
from .errors import StructuralError, InvalidMatroid
from .graph import Divisor, WeightedMultigraph
from .matroid import Rank3SimpleMatroid
from .realizability import search_realization


def element_vertex(e) -> str:
    return f"E:{e}"


def flat_vertex(i: int) -> str:
    return f"F:{i}"


@dataclass(frozen=True)
class LeviConstruction:
    matroid: Rank3SimpleMatroid
    graph: WeightedMultigraph
    labeling: dict
    divisor: Divisor

    def to_dot(self, name: str = "Levi") -> str:
        out = [f"graph {name} {{"]
        for v in self.graph.vertices:
            kind, origin = self.labeling[v]
            shape = "box" if kind == "element" else "circle"
            out.append(f'  "{v}" [shape={shape}, label="{v}\\n{self.divisor[v]}"];')
        for a, b in self.graph.edges:
            out.append(f'  "{a}" -- "{b}";')
        out.append("}")
        return "\n".join(out) + "\n"


def levi_graph(m: Rank3SimpleMatroid) -> LeviConstruction:
    labeling = {element_vertex(e): ("element", e) for e in m.elements}
    labeling.update({flat_vertex(i): ("flat", i) for i in range(len(m.flats))})
    edges = [(element_vertex(e), flat_vertex(i))
             for i, f in enumerate(m.flats) for e in m.elements if e in f]
    try:
        g = WeightedMultigraph(list(labeling), edges)
    except StructuralError as exc:
        raise InvalidMatroid([("connected", f"Levi graph is invalid: {exc}")]) from None
    d = Divisor(g, {element_vertex(e): 1 for e in m.elements})
    return LeviConstruction(m, g, labeling, d)


def verify_cartwright_rank(m: Rank3SimpleMatroid) -> bool:
    """Check that the Levi divisor has combinatorial rank exactly 2."""
    lc = levi_graph(m)
    return rank(lc.graph, lc.divisor) == 2


def algebraic_rank_is_two(m: Rank3SimpleMatroid, p: int, **kwargs) -> bool:
    """Finite-field evidence for algebraic rank 2 over the closure of GF(p).

    True means a realization over GF(p) exists, which settles rank 2 over the
    algebraic closure. False only says no realization exists over GF(p)
    itself; it is not a statement about extension fields.
    """
    return search_realization(m, p, **kwargs) is not None
