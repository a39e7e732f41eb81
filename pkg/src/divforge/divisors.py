"""Reduced divisors, Baker-Norine rank and Riemann-Roch on weighted graphs.

Weighted graphs are handled through :func:`~divforge.graph.virtualize`; all
reductions run on the weight-zero virtual graph.
"""

from __future__ import annotations

from functools import lru_cache

from . import kernels
from .errors import UsageError
from .graph import (Divisor, FiringScript, WeightedMultigraph, canonical_divisor, genus,
                    virtualize)


@lru_cache(maxsize=256)
def _structure(graph: WeightedMultigraph, q: int):
    adj = graph.adjacency()
    dist = [-1] * graph.n
    dist[q] = 0
    frontier = [q]
    while frontier:
        nxt = []
        for u in frontier:
            for w in range(graph.n):
                if adj[u][w] and dist[w] < 0:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return adj, dist


def _reduce_values(graph, values, q, backend=None):
    adj, dist = _structure(graph, q)
    return kernels.reduce_chips(adj, dist, values, q, backend)


def dhar_reduce(graph: WeightedMultigraph, divisor: Divisor, q, *, backend=None):
    """Return the q-reduced divisor equivalent to ``divisor`` and a script.

    ``graph`` must have all weights zero; use :func:`virtualize` first
    otherwise. The returned script ``s`` satisfies
    ``apply_firing(graph, divisor, s) == reduced``.
    """
    if not graph.is_weightless():
        raise UsageError("weight-zero", "dhar_reduce needs a weight-zero graph; virtualize first")
    if divisor.graph != graph:
        raise UsageError("divisor-domain", "divisor is not on this graph")
    chips, script = _reduce_values(graph, divisor.values, graph.index(q), backend)
    return Divisor(graph, chips), FiringScript(tuple(script))


def is_q_reduced(graph: WeightedMultigraph, divisor: Divisor, q) -> bool:
    """Direct check of the definition, by burning."""
    qi = graph.index(q)
    vals = divisor.values
    if any(c < 0 for i, c in enumerate(vals) if i != qi):
        return False
    adj = graph.adjacency()
    burnt = {qi}
    changed = True
    while changed:
        changed = False
        for u in range(graph.n):
            if u not in burnt and vals[u] < sum(adj[u][w] for w in burnt):
                burnt.add(u)
                changed = True
    return len(burnt) == graph.n


def linearly_equivalent(graph: WeightedMultigraph, d1: Divisor, d2: Divisor) -> bool:
    vm = virtualize(graph)
    h = vm.virtual_graph
    return _reduce_values(h, (vm.push(d1) - vm.push(d2)).values, 0)[0] == [0] * h.n


def is_equivalent_to_effective(graph: WeightedMultigraph, divisor: Divisor) -> bool:
    if divisor.degree() < 0:
        return False
    vm = virtualize(graph)
    return _reduce_values(vm.virtual_graph, vm.push(divisor).values, 0)[0][0] >= 0


def rank(graph: WeightedMultigraph, divisor: Divisor, *, backend=None) -> int:
    """Baker-Norine rank of ``divisor``, weights handled by virtualization.

    Test divisors range over every vertex of the virtual graph, handle
    vertices included. The search walks reduced classes of ``D - E`` one
    degree of ``E`` at a time, so each class is reduced once per level.
    """
    if divisor.graph != graph:
        raise UsageError("divisor-domain", "divisor is not on this graph")
    if divisor.degree() < 0:
        return -1
    vm = virtualize(graph)
    adj, dist = _structure(vm.virtual_graph, 0)
    return kernels.rank_levels(adj, dist, vm.push(divisor).values, 0, backend)


def riemann_roch_check(graph: WeightedMultigraph, divisor: Divisor) -> bool:
    k = canonical_divisor(graph)
    lhs = rank(graph, divisor) - rank(graph, k - divisor)
    return lhs == divisor.degree() + 1 - genus(graph)
