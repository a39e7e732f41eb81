"""Independent brute-force checkers used by the acceptance suite and ``demo``.

Nothing here calls the Dhar kernel or the realization search; each routine
decides its question from definitions alone.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product

from .graph import Divisor, FiringScript, WeightedMultigraph, apply_firing, virtualize


def greedy_winnable(graph: WeightedMultigraph, values) -> bool:
    """Baker-Norine greedy dollar game on a weight-zero graph.

    Indebted vertices borrow one at a time; once every vertex has borrowed
    the game is lost, since borrowing by all vertices changes nothing.
    """
    adj = graph.adjacency()
    n = graph.n
    d = list(values)
    if sum(d) < 0:
        return False
    borrowed = [False] * n
    while True:
        debt = [i for i in range(n) if d[i] < 0]
        if not debt:
            return True
        if all(borrowed):
            return False
        v = debt[0]
        borrowed[v] = True
        for w in range(n):
            if adj[v][w]:
                d[w] -= adj[v][w]
                d[v] += adj[v][w]


def effective_divisors(n: int, degree: int):
    for pick in combinations_with_replacement(range(n), degree):
        e = [0] * n
        for i in pick:
            e[i] += 1
        yield e


def rank_bruteforce(graph: WeightedMultigraph, divisor: Divisor) -> int:
    """Rank by enumerating every effective test divisor on the virtual graph."""
    vm = virtualize(graph)
    h = vm.virtual_graph
    base = vm.push(divisor).values
    r = -1
    while True:
        k = r + 1
        if k > max(sum(base), -1) + 1:
            return r
        for e in effective_divisors(h.n, k):
            if not greedy_winnable(h, [a - b for a, b in zip(base, e)]):
                return r
        r = k


def _solve(matrix, rhs):
    """Exact Gaussian elimination over the rationals for a square nonsingular system."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def equivalence_script(graph: WeightedMultigraph, d1: Divisor, d2: Divisor):
    """Integer script taking ``d1`` to ``d2``, or None if they are not equivalent.

    Solves ``L s = d1 - d2`` with the last vertex's count pinned to 0; the
    reduced Laplacian of a connected graph is nonsingular.
    """
    if d1.degree() != d2.degree():
        return None
    n = graph.n
    if n == 1:
        return FiringScript((0,))
    lap = graph.laplacian()
    diff = [a - b for a, b in zip(d1.values, d2.values)]
    sol = _solve([row[:-1] for row in lap[:-1]], diff[:-1])
    if any(x.denominator != 1 for x in sol):
        return None
    s = FiringScript(tuple(int(x) for x in sol) + (0,))
    assert apply_firing(graph, d1, s) == d2
    return s


def bounded_script_search(graph: WeightedMultigraph, d1: Divisor, d2: Divisor, bound: int):
    """Scripts with counts in ``[-bound, bound]`` (last vertex fixed at 0) taking d1 to d2."""
    n = graph.n
    for counts in product(range(-bound, bound + 1), repeat=n - 1):
        s = FiringScript(tuple(counts) + (0,))
        if apply_firing(graph, d1, s) == d2:
            return s
    return None


def random_graph(rng: random.Random, max_vertices=6, max_edges=10, max_weight=2) -> WeightedMultigraph:
    n = rng.randint(1, max_vertices)
    names = [f"v{i}" for i in range(n)]
    edges = [(names[i], names[rng.randrange(i)]) for i in range(1, n)]
    if n > 1:
        for _ in range(rng.randint(0, max_edges - len(edges))):
            a, b = rng.sample(names, 2)
            edges.append((a, b))
    weights = {v: rng.randint(0, max_weight) for v in names}
    return WeightedMultigraph(names, edges, weights)


def random_divisor(rng: random.Random, graph: WeightedMultigraph, max_abs_degree=8, spread=4) -> Divisor:
    while True:
        chips = [rng.randint(-spread, spread) for _ in graph.vertices]
        if abs(sum(chips)) <= max_abs_degree:
            return Divisor(graph, chips)


def corpus(seed: int = 20140101, size: int = 200):
    """Deterministic (graph, divisor) pairs for the property suites."""
    rng = random.Random(seed)
    out = []
    for _ in range(size):
        g = random_graph(rng)
        out.append((g, random_divisor(rng, g)))
    return out


def naive_realizable(matroid, plane):
    """Try every injective assignment of lines to elements."""
    k = plane.field
    elements = list(matroid.elements)
    for lines in permutations(plane.lines, len(elements)):
        line_of = dict(zip(elements, lines))
        points = {}
        ok = True
        for i, a in enumerate(elements):
            for b in elements[i + 1:]:
                x = k.normalize(k.cross(line_of[a], line_of[b]))
                f = matroid.flat_index(a, b)
                if points.setdefault(f, x) != x:
                    ok = False
                    break
            if not ok:
                break
        if ok and len(set(points.values())) == len(points):
            return line_of, points
    return None
