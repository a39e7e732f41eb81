import random
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from divforge.divisors import is_equivalent_to_effective, linearly_equivalent
from divforge.errors import UsageError
from divforge.graph import WeightedMultigraph
from divforge.metrized import (GENERIC, Bounds, MCDivisor, MCFunction, MetrizedComplex, SectionSpace,
                               build_fig2, build_fig3, elliptic, fig3_spaces, forget, limit_grd_verify,
                               mc_div, mc_equiv_effective_bounded, mc_rank_bounded, rational, with_generic)

H = Fraction(1, 2)


def one_edge():
    g = WeightedMultigraph(["a", "b"], [("a", "b")])
    return MetrizedComplex(g, {"a": rational(), "b": rational()}, (("p", "q"),))


def test_mc_div_linear_edge():
    cx = one_edge()
    f = MCFunction({"a": 0, "b": 2}, {0: ((Fraction(1), 2),)})
    # incoming slopes: the tail sees -2, the head +2
    assert mc_div(cx, f) == MCDivisor({("a", "p"): -2, ("b", "q"): 2})


def test_mc_div_kink():
    cx = one_edge()
    f = MCFunction({"a": 0, "b": 0}, {0: ((H, 1), (H, -1))})
    assert mc_div(cx, f) == MCDivisor({("a", "p"): -1, ("b", "q"): -1}, {(0, H): 2})


def test_mc_div_component_part():
    cx = one_edge()
    f = MCFunction({"a": 0, "b": 0}, {}, {"a": ({"r": 1}, {"s": 1})})
    assert mc_div(cx, f) == MCDivisor({("a", "r"): 1, ("a", "s"): -1})


def test_fig3_slope_example():
    cx, _ = build_fig3()
    f = MCFunction({"v1": 1, "v3": 0, "v2": 0}, {i: ((Fraction(1), -1),) for i in range(3)})
    div = mc_div(cx, f)
    assert div.restrict("v1") == {"x1": 1, "y1": 1, "z1": 1}
    assert div.restrict("v3") == {"x3": -1, "y3": -1, "z3": -1}


@pytest.mark.parametrize("f, invariant", [
    (MCFunction({"a": 0, "b": 1}, {0: ((Fraction(1), 2),)}), "continuity"),
    (MCFunction({"a": 0, "b": 0}, {0: ((H, 0),)}), "edge-profile"),
    (MCFunction({"a": 0, "b": 0}, {}, {"a": ({"r": 2}, {"s": 1})}), "principal-part"),
])
def test_invalid_functions(f, invariant):
    with pytest.raises(UsageError) as err:
        mc_div(one_edge(), f)
    assert err.value.invariant == invariant


def test_edge_chip_must_be_interior():
    with pytest.raises(UsageError):
        MCDivisor({}, {(0, Fraction(1)): 1})


def test_json_roundtrip():
    cx, fam = build_fig2(101)
    assert MetrizedComplex.from_json(cx.to_json()) == cx
    d = fam[0] + MCDivisor({}, {(1, Fraction(1, 4)): 2})
    assert MCDivisor.from_json(d.to_json()) == d


def test_nodal_condition():
    g = WeightedMultigraph(["a", "b"], [("a", "b"), ("a", "b")])
    with pytest.raises(UsageError) as err:
        MetrizedComplex(g, {"a": rational(), "b": rational()}, (("p", "q"), ("p", "r")))
    assert err.value.invariant == "nodal-condition"


def test_genus():
    assert build_fig2(101)[0].genus() == 3
    assert build_fig3()[0].genus() == 8


@pytest.mark.parametrize("n", [5, 7, 11])
def test_elliptic_exhaustive(n):
    labels = {"o": 0, "p": 1, "q": 3}
    comp = elliptic(n, labels)
    names = list(labels) + [f"#{k}" for k in range(n)]
    for deg in (0, 1):
        for a, b in combinations_with_replacement(names, 2):
            div = {a: 1}
            div[b] = div.get(b, 0) + deg - 1
            # oracle: an effective divisor of the same degree with the same sum
            sums = {sum(c) % n for c in combinations_with_replacement(range(n), deg)} if deg else {0}
            want = sum(div.values()) == deg and comp.group_sum(div) in sums
            assert comp.equivalent_to_effective(div) == want
            if want:
                rep = comp.effective_representative(div, anchor="o")
                assert all(c > 0 for c in rep.values()) and sum(rep.values()) == deg
                assert comp.group_sum(rep) == comp.group_sum(div)


def test_elliptic_needs_distinct_points():
    with pytest.raises(UsageError):
        elliptic(7, {"a": 1, "b": 8})


def _rational_cases(count, seed=3):
    rng = random.Random(seed)
    while count:
        n = rng.randint(2, 3)
        vs = [f"v{i}" for i in range(n)]
        edges = [(vs[i], vs[rng.randrange(i)]) for i in range(1, n)]
        for _ in range(rng.randint(0, 2)):
            edges.append(tuple(rng.sample(vs, 2)))
        g = WeightedMultigraph(vs, edges)
        cx = MetrizedComplex(g, {v: rational() for v in vs}, tuple((f"m{i}", f"n{i}") for i in range(len(edges))))
        d = MCDivisor({(v, GENERIC): rng.randint(-2, 2) for v in vs})
        if d.degree() >= 0:
            count -= 1
            yield cx, d


def test_rational_complexes_match_graph():
    # with rational components only, the complex question reduces to the graph
    for cx, d in _rational_cases(60):
        b = Bounds(slope=sum(abs(c) for c in d.comp.values()) + 1, grid=2)
        res = mc_equiv_effective_bounded(with_generic(cx), d, b)
        assert res.found == is_equivalent_to_effective(cx.graph, forget(cx, d))
        if res.found:
            moved = d + mc_div(with_generic(cx), res.witness)
            assert moved.is_effective()
            if not moved.edge:
                assert linearly_equivalent(cx.graph, forget(cx, d), forget(cx, moved))


def test_negative_degree_short_circuits():
    cx, _ = build_fig2(101)
    res = mc_equiv_effective_bounded(cx, MCDivisor({("u", "a_u"): -1}))
    assert not res.found and res.label == "no_within_bounds"


def test_effective_input_gives_constant():
    cx, fam = build_fig2(101)
    res = mc_equiv_effective_bounded(cx, fam[0])
    assert res.found and all(s == 0 for prof in res.witness.profiles.values() for _, s in prof)


@pytest.mark.parametrize("order", [101, 1009])
def test_fig2_rank_zero_all_extensions(order):
    cx, fam = build_fig2(order)
    for d in fam:
        assert forget(cx, d).values == (1, 0, 1)
        v = mc_rank_bounded(cx, d, 1, Bounds(4, 4))
        assert v.rank == 0
        assert v.failing.degree() == 1


def test_fig3_family():
    cx, fam = build_fig3()
    for d in fam:
        assert forget(cx, d).values == (1, 3, 2)
        assert limit_grd_verify(cx, d, fig3_spaces(d), 2, 6)


def test_limit_preconditions():
    cx, fam = build_fig3()
    d = fam[0]
    with pytest.raises(UsageError) as err:
        limit_grd_verify(cx, d, fig3_spaces(d), 2, 7)
    assert err.value.invariant == "degree"
    with pytest.raises(UsageError) as err:
        limit_grd_verify(cx, d, SectionSpace({"v1": {"x1": 1}}), 2, 6)
    assert err.value.invariant == "anchor-degree"
    fig2, fam2 = build_fig2(101)
    with pytest.raises(UsageError) as err:
        limit_grd_verify(fig2, fam2[0], SectionSpace({}), 0, 2)
    assert err.value.invariant == "rational-components"


def test_too_small_space_fails():
    cx, fam = build_fig3()
    d = fam[0]
    spaces = SectionSpace({"v1": {"x1": 2}, "v2": {"g1": 2}, "v3": {"x3": 2}})
    rep = limit_grd_verify(cx, d, spaces, 2, 6, report=True)
    assert not rep.holds and rep.failing is not None


def test_limit_workers_deterministic():
    cx, fam = build_fig3()
    d = fam[1]
    one = limit_grd_verify(cx, d, fig3_spaces(d), 2, 6, report=True)
    two = limit_grd_verify(cx, d, fig3_spaces(d), 2, 6, workers=2, report=True)
    assert one == two
