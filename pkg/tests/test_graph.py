import pytest

from divforge.errors import StructuralError, UsageError
from divforge.graph import (Divisor, FiringScript, WeightedMultigraph, apply_firing,
                            canonical_divisor, genus, virtualize)
from divforge.acceptance import fig2_graph, fig3_graph


@pytest.mark.parametrize("vertices, edges, weights, invariant", [
    (["a", "b"], [], None, "connected"),
    (["a", "b"], [("a", "a"), ("a", "b")], None, "no-loops"),
    (["a", "b"], [("a", "c")], None, "edge-endpoints"),
    (["a", "a"], [], None, "distinct-vertices"),
    (["a", "b"], [("a", "b")], {"a": -1}, "nonnegative-weights"),
    ([], [], None, "connected"),
])
def test_structural_errors_name_invariant(vertices, edges, weights, invariant):
    with pytest.raises(StructuralError) as err:
        WeightedMultigraph(vertices, edges, weights)
    assert err.value.invariant == invariant


def test_single_vertex_is_fine():
    g = WeightedMultigraph(["x"], [], {"x": 2})
    assert genus(g) == 2
    assert canonical_divisor(g).values == (2,)


def test_genus_and_canonical():
    assert genus(fig3_graph()) == 8
    assert canonical_divisor(fig3_graph()).values == (1, 8, 5)
    assert genus(fig2_graph()) == 3
    assert canonical_divisor(fig2_graph()).values == (1, 2, 1)


def test_laplacian_rows_sum_to_zero():
    lap = fig3_graph().laplacian()
    assert lap[0] == [3, -3, 0]
    assert all(sum(row) == 0 for row in lap)


def test_firing_everything_is_identity():
    g = fig3_graph()
    d = Divisor(g, {"v1": 1, "v3": 3, "v2": 2})
    assert apply_firing(g, d, FiringScript((5, 5, 5))) == d


def test_single_firing():
    g = fig3_graph()
    d = Divisor(g, [0, 0, 0])
    fired = apply_firing(g, d, FiringScript.of(g, {"v1": 1}))
    assert fired.values == (-3, 3, 0)


def test_divisor_arithmetic_and_domain():
    g = fig3_graph()
    a = Divisor(g, {"v1": 2})
    b = Divisor(g, [1, 1, 1])
    assert (a + b).values == (3, 1, 1)
    assert (a - b).degree() == -1
    assert not (a - b).is_effective()
    assert (-a).values == (-2, 0, 0)
    with pytest.raises(UsageError):
        Divisor(g, {"nope": 1})
    with pytest.raises(UsageError):
        Divisor(g, [1, 2])
    with pytest.raises(UsageError):
        a + Divisor(fig2_graph(), [0, 0, 0])


def test_json_roundtrip():
    g = fig2_graph()
    assert WeightedMultigraph.from_json(g.to_json()) == g
    d = Divisor(g, {"u": 1, "w": -2})
    assert Divisor.from_json(g, d.to_json()) == d


def test_json_schema_errors():
    with pytest.raises(UsageError) as err:
        WeightedMultigraph.from_json({"edges": []})
    assert err.value.invariant == "graph-schema"
    with pytest.raises(UsageError):
        WeightedMultigraph.from_json({"vertices": ["a", "b"], "edges": [["a", "b", "c"]]})


def test_virtualize_adds_handles():
    g = fig2_graph()
    vm = virtualize(g)
    h = vm.virtual_graph
    assert h.n == 6 and h.is_weightless()
    assert genus(h) == genus(g)
    assert vm.handles["u"] == ("u~h0",)
    assert h.edge_multiset()[frozenset({"u", "u~h0"})] == 2
    pushed = vm.push(Divisor(g, {"u": 1}))
    assert pushed["u"] == 1 and pushed.degree() == 1


def test_virtualize_weightless_is_identity():
    g = fig3_graph()
    assert virtualize(g).virtual_graph is g


def test_dot_output():
    g = fig2_graph()
    dot = g.to_dot(Divisor(g, {"u": 1}))
    assert dot.startswith("graph G {") and '"u" -- "v";' in dot and "w=1" in dot
