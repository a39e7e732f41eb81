from itertools import combinations

import pytest

from divforge.divisors import rank
from divforge.errors import InvalidMatroid
from divforge.levi import algebraic_rank_is_two, levi_graph, verify_cartwright_rank
from divforge.matroid import fano, is_isomorphic, non_fano, uniform_33, validate
from divforge.oracles import rank_bruteforce
from divforge.projective import build_plane
from divforge.realizability import arrangement_matroid


def test_heawood_shape():
    lc = levi_graph(fano())
    g = lc.graph
    assert g.n == 14 and len(g.edges) == 21
    assert all(g.degree(v) == 3 for v in g.vertices)
    assert lc.divisor.degree() == 7
    assert all(lc.divisor[v] == (1 if kind == "element" else 0) for v, (kind, _) in lc.labeling.items())


def test_small_cases_match_bruteforce():
    for m in (uniform_33(), validate(list("abcd"), [list("abc"), list("ad"), list("bd"), list("cd")])):
        lc = levi_graph(m)
        assert rank(lc.graph, lc.divisor) == rank_bruteforce(lc.graph, lc.divisor) == 2


def test_gf2_arrangements_all_have_rank_two():
    plane = build_plane(2)
    seen = 0
    for k in range(3, 8):
        for lines in combinations(plane.lines, k):
            try:
                m = arrangement_matroid(plane, lines)
            except InvalidMatroid:
                continue  # concurrent lines: rank below 3
            seen += 1
            assert verify_cartwright_rank(m)
    assert seen > 50


def test_rank_invariant_under_cyclic_relabel():
    cyc = validate([str(i) for i in range(7)], [[str((i + k) % 7) for k in (0, 1, 3)] for i in range(7)])
    assert is_isomorphic(cyc, fano())
    shift = {str(i): str((i + 1) % 7) for i in range(7)}
    assert {frozenset(shift[e] for e in f) for f in cyc.flats} == set(cyc.flats)
    lc = levi_graph(cyc)
    assert rank(lc.graph, lc.divisor) == 2


def test_non_fano_rank_two():
    assert verify_cartwright_rank(non_fano())


def test_algebraic_bridge():
    assert algebraic_rank_is_two(fano(), 2)
    assert not algebraic_rank_is_two(fano(), 3)
    assert algebraic_rank_is_two(non_fano(), 3)


def test_dot_marks_kinds():
    dot = levi_graph(uniform_33()).to_dot()
    assert "shape=box" in dot and "shape=circle" in dot
    assert dot.count(" -- ") == 6
