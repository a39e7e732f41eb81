from itertools import combinations

import pytest

from divforge.errors import CapacityError, UsageError
from divforge.matroid import fano, non_fano, uniform_33, validate
from divforge.oracles import naive_realizable
from divforge.projective import PrimeField, build_plane, line_intersection
from divforge.realizability import (Realization, Verdict, is_realization, realizability_report,
                                    search_realization)


def small_matroids(n):
    """Every rank-3 simple matroid on n labelled elements."""
    elements = [str(i) for i in range(n)]
    triples = [frozenset(c) for k in range(3, n) for c in combinations(elements, k)]

    def grow(start, chosen):
        yield chosen
        for i in range(start, len(triples)):
            if all(len(triples[i] & f) <= 1 for f in chosen):
                yield from grow(i + 1, chosen + [triples[i]])

    for big in grow(0, []):
        covered = {frozenset(p) for f in big for p in combinations(sorted(f), 2)}
        pairs = [frozenset(p) for p in combinations(elements, 2) if frozenset(p) not in covered]
        yield validate(elements, [sorted(f) for f in big] + [sorted(p) for p in pairs])


def test_field_arithmetic():
    k = PrimeField(7)
    assert k.inv(3) * 3 % 7 == 1
    assert k.normalize((0, 3, 6)) == (0, 1, 2)
    with pytest.raises(UsageError):
        k.normalize((0, 0, 7))
    with pytest.raises(UsageError):
        PrimeField(4)


def test_plane_counts():
    for p in (2, 3, 5):
        plane = build_plane(p)
        count = p * p + p + 1
        assert len(plane.points) == count == len(plane.lines)
        assert all(len(pts) == p + 1 for pts in plane.on_line)


def test_plane_intersection():
    plane = build_plane(3)
    for a, b in combinations(plane.lines[:6], 2):
        x = line_intersection(plane, a, b)
        assert plane.incident(x, a) and plane.incident(x, b)


def test_plane_bounds():
    with pytest.raises(CapacityError):
        build_plane(17)
    assert len(build_plane(17, max_prime=17).points) == 307
    with pytest.raises(UsageError):
        build_plane(9)


@pytest.mark.parametrize("n, p", [(3, 2), (4, 2), (4, 3), (5, 2)])
def test_search_agrees_with_naive_oracle(n, p):
    plane = build_plane(p)
    for m in small_matroids(n):
        assert (search_realization(m, p) is not None) == (naive_realizable(m, plane) is not None)


def test_pinning_does_not_change_verdicts():
    for n in (4, 5):
        for m in small_matroids(n):
            assert (search_realization(m, 2) is None) == (search_realization(m, 2, pin_frame=False) is None)


def test_fano_and_non_fano():
    assert search_realization(fano(), 2) is not None
    assert search_realization(fano(), 3) is None
    assert search_realization(non_fano(), 2) is None
    assert search_realization(non_fano(), 3) is not None


def test_witness_checks():
    m = fano()
    plane = build_plane(2)
    w = search_realization(m, 2)
    assert is_realization(m, plane, w)
    again = Realization.from_json(w.to_json(m))
    assert again == w
    lines = dict(w.line_of)
    lines["1"], lines["2"] = lines["2"], lines["1"]
    assert not is_realization(m, plane, Realization(lines, w.point_of, 2))
    assert not is_realization(m, plane, Realization({}, w.point_of, 2))


def test_workers_do_not_change_result():
    m = non_fano()
    assert search_realization(m, 3, workers=1) == search_realization(m, 3, workers=3)
    assert search_realization(fano(), 3, workers=2) is None


def test_report_labels():
    rep = realizability_report(uniform_33(), [2, 3])
    assert [v.label for v in rep.values()] == ["found", "found"]
    assert Verdict(5, None).label == "not_found"
    with pytest.raises(CapacityError):
        realizability_report(fano(), [17])
