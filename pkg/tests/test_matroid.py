import pytest

from divforge.errors import DegenerateMatroid, InvalidMatroid, UsageError
from divforge.matroid import (Rank3SimpleMatroid, complete_to_basis, fano, from_arrangement, is_basis,
                              is_isomorphic, isomorphism, non_fano, uniform_33, validate)
from divforge.projective import build_plane
from divforge.realizability import arrangement_matroid


def test_fano_shape():
    m = fano()
    assert len(m.elements) == 7 and len(m.flats) == 7
    assert all(len(f) == 3 for f in m.flats)
    assert all(len(m.flats_containing(e)) == 3 for e in m.elements)


def test_flat_lookup():
    m = fano()
    assert m.flat_of_pair("1", "2") == frozenset("123")
    assert m.flat_index("5", "3") == m.flat_index("3", "6")
    with pytest.raises(UsageError):
        m.flat_index("1", "1")


def test_basis_and_completion():
    m = fano()
    assert is_basis(m, "1", "2", "4")
    assert not is_basis(m, "1", "2", "3")
    assert complete_to_basis(m, "1", "2") == "4"
    with pytest.raises(UsageError):
        is_basis(m, "1", "1", "2")


def test_degenerate_completion():
    # bypasses validation on purpose: everything on one line
    m = Rank3SimpleMatroid(("a", "b", "c"), (frozenset("abc"),))
    with pytest.raises(DegenerateMatroid):
        complete_to_basis(m, "a", "b")


@pytest.mark.parametrize("elements, flats, invariant", [
    (["a", "b", "c"], [["a", "b", "c"]], "two-flats"),
    (["a", "b", "c"], [["a", "b"], ["a", "c"]], "pair-in-one-flat"),
    (["a", "b", "c"], [["a", "b", "c"], ["a", "b"]], "pair-in-one-flat"),
    (["a", "b", "c"], [["a", "b"], ["a", "c"], ["b", "c"], ["b", "c"]], "distinct-flats"),
    (["a", "b", "c"], [["a", "b"], ["a", "c"], ["b", "c"], ["c", "d"]], "flat-domain"),
    (["a", "a", "b"], [["a", "b"], ["a", "b"]], "distinct-elements"),
    (["a", "b", "c"], [["a"], ["a", "b"], ["a", "c"], ["b", "c"]], "flat-size"),
])
def test_violations_are_named(elements, flats, invariant):
    with pytest.raises(InvalidMatroid) as err:
        validate(elements, flats)
    assert invariant in [name for name, _ in err.value.violations]


def test_all_violations_listed():
    with pytest.raises(InvalidMatroid) as err:
        validate(["a", "b", "c", "d"], [["a", "b"]])
    assert len(err.value.violations) >= 5


def test_json_roundtrip():
    for m in (fano(), non_fano(), uniform_33()):
        assert Rank3SimpleMatroid.from_json(m.to_json()) == m


def test_pg22_lines_give_fano():
    plane = build_plane(2)
    m = arrangement_matroid(plane, plane.lines)
    assert is_isomorphic(m, fano())
    assert not is_isomorphic(m, non_fano())


def test_cyclic_fano_is_isomorphic():
    flats = [[str((i + k) % 7) for k in (0, 1, 3)] for i in range(7)]
    cyc = validate([str(i) for i in range(7)], flats)
    phi = isomorphism(cyc, fano())
    assert phi is not None
    assert {frozenset(phi[e] for e in f) for f in cyc.flats} == set(fano().flats)


def test_from_arrangement_by_hand():
    lines = ["A", "B", "C"]
    incidence = {"p": {"A", "B"}, "q": {"B", "C"}, "r": {"A", "C"}}
    assert is_isomorphic(from_arrangement(lines, incidence), uniform_33())
