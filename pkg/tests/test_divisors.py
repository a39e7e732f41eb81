import pytest
from hypothesis import given, settings

from divforge.divisors import (dhar_reduce, is_equivalent_to_effective, is_q_reduced,
                               linearly_equivalent, rank, riemann_roch_check)
from divforge.errors import UsageError
from divforge.graph import Divisor, FiringScript, apply_firing, canonical_divisor, genus, virtualize
from divforge.oracles import equivalence_script, greedy_winnable, rank_bruteforce

from conftest import graph_divisors, path


# values below were produced by the oracles module (exact lattice solve and
# brute-force rank) and frozen
@pytest.mark.parametrize("chips, q, reduced, script", [
    ((0, 2, 0), "u", (2, 0, 0), (0, 2, 2)),
    ((1, -1, 1), "v", (0, 1, 0), (1, 0, 1)),
    ((-3, 0, 3), "u", (0, 0, 0), (0, 3, 6)),
    ((0, 0, 0), "w", (0, 0, 0), (0, 0, 0)),
])
def test_dhar_examples_on_path(chips, q, reduced, script):
    g = path()
    d = Divisor(g, chips)
    red, s = dhar_reduce(g, d, q)
    assert red.values == reduced
    assert s.counts == script
    assert equivalence_script(g, d, red) is not None


def test_dhar_needs_weightless():
    g = path({"v": 1})
    with pytest.raises(UsageError) as err:
        dhar_reduce(g, Divisor(g), "u")
    assert err.value.invariant == "weight-zero"


@settings(max_examples=150, deadline=None)
@given(graph_divisors(max_weight=0, spread=5))
def test_reduce_properties(gd):
    g, d = gd
    q = g.vertices[-1]
    red, s = dhar_reduce(g, d, q)
    assert is_q_reduced(g, red, q)
    assert apply_firing(g, d, s) == red
    assert red.degree() == d.degree()
    # a second reduction is a no-op up to the all-ones script
    again, s2 = dhar_reduce(g, red, q)
    assert again == red and len(set(s2.counts)) == 1


@settings(max_examples=100, deadline=None)
@given(graph_divisors(max_weight=0, spread=3))
def test_reduced_form_is_class_invariant(gd):
    g, d = gd
    shifted = apply_firing(g, d, FiringScript(tuple(range(g.n))))
    q = g.vertices[0]
    assert dhar_reduce(g, d, q)[0] == dhar_reduce(g, shifted, q)[0]
    assert linearly_equivalent(g, d, shifted)


@settings(max_examples=100, deadline=None)
@given(graph_divisors(max_weight=1, spread=3))
def test_effective_agrees_with_greedy(gd):
    g, d = gd
    vm = virtualize(g)
    assert is_equivalent_to_effective(g, d) == greedy_winnable(vm.virtual_graph, vm.push(d).values)


@settings(max_examples=60, deadline=None)
@given(graph_divisors(max_vertices=4, max_extra=3, max_weight=1, spread=2))
def test_rank_matches_bruteforce(gd):
    g, d = gd
    assert rank(g, d) == rank_bruteforce(g, d)


@settings(max_examples=60, deadline=None)
@given(graph_divisors(max_vertices=4, max_weight=2, spread=3))
def test_riemann_roch(gd):
    g, d = gd
    assert riemann_roch_check(g, d)


@settings(max_examples=60, deadline=None)
@given(graph_divisors(max_vertices=4, max_weight=1, spread=2))
def test_rank_monotone_in_chips(gd):
    g, d = gd
    r = rank(g, d)
    for v in g.vertices:
        up = rank(g, d.add_chip(v))
        assert r <= up <= r + 1


def test_rank_edge_cases():
    g = path()
    assert rank(g, Divisor(g, [-1, 0, 0])) == -1
    assert rank(g, Divisor(g)) == 0
    # genus 0: rank equals degree for nonnegative degree
    assert rank(g, Divisor(g, [0, 5, -2])) == 3
    k = canonical_divisor(path({"u": 1, "v": 1, "w": 1}))
    assert rank(k.graph, k) == genus(k.graph) - 1


def test_rank_large_degree_is_degree_minus_genus():
    g = path({"u": 1, "v": 1, "w": 1})
    d = Divisor(g, [3, -1, 4])
    assert rank(g, d) == d.degree() - genus(g)


def test_rank_backends_agree():
    from divforge import kernels

    g = path({"u": 1, "w": 1})
    d = Divisor(g, [2, 1, 0])
    want = rank(g, d, backend="python")
    if kernels.BACKEND == "cython":
        assert rank(g, d, backend="cython") == want
    assert want == rank_bruteforce(g, d)
