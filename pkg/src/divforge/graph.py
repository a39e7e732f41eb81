"""Vertex-weighted multigraphs, divisors and the Laplacian action."""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import StructuralError, UsageError


def _freeze(mapping):
    return MappingProxyType(dict(mapping))


@dataclass(frozen=True)
class WeightedMultigraph:
    """Connected loopless multigraph with nonnegative integer vertex weights.

    ``edges`` is a tuple of 2-tuples; parallel edges are repeated entries.
    Vertex order is the input order and drives every deterministic choice
    made downstream (reduction order, enumeration order, JSON output).
    """

    vertices: tuple
    weights: Mapping
    edges: tuple
    _index: Mapping = field(init=False, repr=False, compare=False)

    def __init__(self, vertices: Iterable, edges: Iterable, weights: Mapping | None = None):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise StructuralError("distinct-vertices", "vertex identifiers repeat")
        if not vertices:
            raise StructuralError("connected", "graph has no vertices")
        weights = dict(weights or {})
        unknown = set(weights) - set(vertices)
        if unknown:
            raise StructuralError("weights-domain", f"weights given for unknown vertices {sorted(map(str, unknown))}")
        full = {v: int(weights.get(v, 0)) for v in vertices}
        for v, w in full.items():
            if w < 0:
                raise StructuralError("nonnegative-weights", f"vertex {v!r} has weight {w}")
        vset = set(vertices)
        clean = []
        for e in edges:
            a, b = e
            if a not in vset or b not in vset:
                raise StructuralError("edge-endpoints", f"edge {e!r} uses an unknown vertex")
            if a == b:
                raise StructuralError("no-loops", f"loop edge at {a!r}")
            clean.append((a, b))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "weights", _freeze(full))
        object.__setattr__(self, "edges", tuple(clean))
        object.__setattr__(self, "_index", _freeze({v: i for i, v in enumerate(vertices)}))
        if not self._connected():
            raise StructuralError("connected", "graph is disconnected")

    def __reduce__(self):
        return WeightedMultigraph, (self.vertices, self.edges, dict(self.weights))

    def _connected(self) -> bool:
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            for u in adj[todo.pop()]:
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        return len(seen) == len(self.vertices)

    def __hash__(self):
        return hash((self.vertices, tuple(sorted(self.weights.items(), key=lambda kv: self.index(kv[0]))),
                     tuple(sorted(Counter(frozenset(e) for e in self.edges).items(), key=repr))))

    def __eq__(self, other):
        if not isinstance(other, WeightedMultigraph):
            return NotImplemented
        return (self.vertices == other.vertices and dict(self.weights) == dict(other.weights)
                and self.edge_multiset() == other.edge_multiset())

    def index(self, v) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UsageError("vertex-domain", f"unknown vertex {v!r}") from None

    def edge_multiset(self) -> Counter:
        return Counter(frozenset(e) for e in self.edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def degree(self, v) -> int:
        return sum(1 for a, b in self.edges if a == v or b == v)

    def adjacency(self) -> list[list[int]]:
        """Dense matrix of edge multiplicities, indexed by vertex order."""
        n = self.n
        m = [[0] * n for _ in range(n)]
        for a, b in self.edges:
            i, j = self._index[a], self._index[b]
            m[i][j] += 1
            m[j][i] += 1
        return m

    def laplacian(self) -> list[list[int]]:
        adj = self.adjacency()
        lap = [[-x for x in row] for row in adj]
        for i, row in enumerate(adj):
            lap[i][i] = sum(row)
        return lap

    def is_weightless(self) -> bool:
        return all(w == 0 for w in self.weights.values())

    def bfs_order(self, root) -> list:
        adj = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        order, seen, todo = [root], {root}, deque([root])
        while todo:
            u = todo.popleft()
            for w in sorted(adj[u], key=self.index):
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    todo.append(w)
        return order

    # serialization

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "weight": self.weights[v]} for v in self.vertices],
            "edges": [[a, b] for a, b in self.edges],
        }

    @classmethod
    def from_json(cls, data) -> "WeightedMultigraph":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            raw = data["vertices"]
            vertices = [v["id"] if isinstance(v, dict) else v for v in raw]
            weights = {v["id"]: v.get("weight", 0) for v in raw if isinstance(v, dict)}
            edges = [tuple(e) for e in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError("graph-schema", f"malformed graph JSON: {exc}") from None
        for e in edges:
            if len(e) != 2:
                raise UsageError("graph-schema", f"edge {list(e)!r} must have two endpoints")
        return cls(vertices, edges, weights)

    def to_dot(self, divisor: "Divisor | None" = None, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            label = str(v)
            if self.weights[v]:
                label += f" (w={self.weights[v]})"
            if divisor is not None:
                label += f"\\n{divisor[v]}"
            lines.append(f'  "{v}" [label="{label}"];')
        for a, b in self.edges:
            lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


class Divisor(Mapping):
    """Integer chip configuration on the vertices of a graph.

    Missing vertices default to zero chips; the stored support is always the
    full vertex set so equality is plain value comparison.
    """

    __slots__ = ("graph", "_chips")

    def __init__(self, graph: WeightedMultigraph, chips: Mapping | Sequence | None = None):
        if chips is None:
            values = [0] * graph.n
        elif isinstance(chips, Mapping):
            unknown = set(chips) - set(graph.vertices)
            if unknown:
                raise UsageError("divisor-domain", f"chips on unknown vertices {sorted(map(str, unknown))}")
            values = [int(chips.get(v, 0)) for v in graph.vertices]
        else:
            values = [int(c) for c in chips]
            if len(values) != graph.n:
                raise UsageError("divisor-domain", f"expected {graph.n} chip counts, got {len(values)}")
        self.graph = graph
        self._chips = tuple(values)

    @classmethod
    def from_json(cls, graph, data) -> "Divisor":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict):
            raise UsageError("divisor-schema", "divisor JSON must be an object")
        return cls(graph, data)

    def to_json(self) -> dict:
        return {v: c for v, c in zip(self.graph.vertices, self._chips)}

    def __getitem__(self, v):
        return self._chips[self.graph.index(v)]

    def __iter__(self):
        return iter(self.graph.vertices)

    def __len__(self):
        return len(self._chips)

    def __eq__(self, other):
        if isinstance(other, Divisor):
            return self.graph == other.graph and self._chips == other._chips
        return NotImplemented

    def __hash__(self):
        return hash(self._chips)

    def __repr__(self):
        body = ", ".join(f"{v}: {c}" for v, c in zip(self.graph.vertices, self._chips))
        return f"Divisor({{{body}}})"

    @property
    def values(self) -> tuple:
        return self._chips

    def degree(self) -> int:
        return sum(self._chips)

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self._chips)

    def _check(self, other):
        if other.graph != self.graph:
            raise UsageError("divisor-domain", "divisors live on different graphs")

    def __add__(self, other):
        self._check(other)
        return Divisor(self.graph, [a + b for a, b in zip(self._chips, other._chips)])

    def __sub__(self, other):
        self._check(other)
        return Divisor(self.graph, [a - b for a, b in zip(self._chips, other._chips)])

    def __neg__(self):
        return Divisor(self.graph, [-a for a in self._chips])

    def add_chip(self, v, k: int = 1) -> "Divisor":
        vals = list(self._chips)
        vals[self.graph.index(v)] += k
        return Divisor(self.graph, vals)


@dataclass(frozen=True)
class FiringScript:
    """Net number of times each vertex fires."""

    counts: tuple

    def __neg__(self):
        return FiringScript(tuple(-c for c in self.counts))

    def is_zero(self) -> bool:
        return not any(self.counts)

    def to_json(self, graph: WeightedMultigraph) -> dict:
        return {v: c for v, c in zip(graph.vertices, self.counts)}

    @classmethod
    def of(cls, graph: WeightedMultigraph, counts: Mapping) -> "FiringScript":
        return cls(tuple(int(counts.get(v, 0)) for v in graph.vertices))


def genus(graph: WeightedMultigraph) -> int:
    """First Betti number plus total vertex weight."""
    return len(graph.edges) - graph.n + 1 + sum(graph.weights.values())


def canonical_divisor(graph: WeightedMultigraph) -> Divisor:
    return Divisor(graph, [graph.degree(v) + 2 * graph.weights[v] - 2 for v in graph.vertices])


def apply_firing(graph: WeightedMultigraph, divisor: Divisor, script: FiringScript) -> Divisor:
    """Return ``D - L s``: every vertex fires ``s(v)`` times."""
    if len(script.counts) != graph.n or divisor.graph != graph:
        raise UsageError("divisor-domain", "script or divisor does not match the graph")
    lap = graph.laplacian()
    s = script.counts
    return Divisor(graph, [d - sum(row[j] * s[j] for j in range(graph.n))
                           for d, row in zip(divisor.values, lap)])


@dataclass(frozen=True)
class VirtualizationMap:
    """Weight-zero model of a weighted graph.

    Each unit of weight at ``v`` becomes a handle vertex joined to ``v`` by
    two parallel edges. Handle names are ``"<v>~h<i>"``.
    """

    base: WeightedMultigraph
    virtual_graph: WeightedMultigraph
    vertex_map: Mapping
    handles: Mapping

    def push(self, divisor: Divisor) -> Divisor:
        """Zero-extend a divisor on the base graph."""
        if divisor.graph != self.base:
            raise UsageError("divisor-domain", "divisor is not on the base graph")
        chips = {self.vertex_map[v]: divisor[v] for v in self.base.vertices}
        return Divisor(self.virtual_graph, chips)


def virtualize(graph: WeightedMultigraph) -> VirtualizationMap:
    if graph.is_weightless():
        ident = {v: v for v in graph.vertices}
        return VirtualizationMap(graph, graph, _freeze(ident), _freeze({v: () for v in graph.vertices}))
    taken = set(graph.vertices)
    vertices = list(graph.vertices)
    edges = list(graph.edges)
    handles = {}
    for v in graph.vertices:
        hs = []
        for i in range(graph.weights[v]):
            h = f"{v}~h{i}"
            while h in taken:
                h += "'"
            taken.add(h)
            hs.append(h)
            vertices.append(h)
            edges += [(v, h), (v, h)]
        handles[v] = tuple(hs)
    virtual = WeightedMultigraph(vertices, edges)
    return VirtualizationMap(graph, virtual, _freeze({v: v for v in graph.vertices}), _freeze(handles))
