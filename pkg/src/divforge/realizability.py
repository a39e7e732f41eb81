"""Exhaustive realizability of rank-3 simple matroids over PG(2, p)."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from .errors import UsageError
from .matroid import Rank3SimpleMatroid, complete_to_basis
from .projective import DEFAULT_MAX_PRIME, ProjectivePlane, build_plane

FRAME = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@dataclass(frozen=True)
class Realization:
    """Lines for elements and points for flats (keyed by flat index)."""

    line_of: dict
    point_of: dict
    p: int

    def to_json(self, matroid: Rank3SimpleMatroid) -> dict:
        return {
            "lines": {str(e): list(self.line_of[e]) for e in matroid.elements},
            "points": {f"F{i}": list(self.point_of[i]) for i in range(len(matroid.flats))},
            "field": self.p,
        }

    @classmethod
    def from_json(cls, data) -> "Realization":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            lines = {k: tuple(v) for k, v in data["lines"].items()}
            points = {int(k[1:]) if str(k).startswith("F") else int(k): tuple(v)
                      for k, v in data["points"].items()}
            return cls(lines, points, int(data["field"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError("witness-schema", f"malformed witness JSON: {exc}") from None


def is_realization(m: Rank3SimpleMatroid, plane: ProjectivePlane, r: Realization) -> bool:
    k = plane.field
    if set(r.line_of) != set(m.elements) or set(r.point_of) != set(range(len(m.flats))):
        return False
    try:
        lines = {e: k.normalize(l) for e, l in r.line_of.items()}
        points = {i: k.normalize(x) for i, x in r.point_of.items()}
    except UsageError:
        return False
    if len(set(lines.values())) != len(lines) or len(set(points.values())) != len(points):
        return False
    for a, b in combinations(m.elements, 2):
        if plane.line_intersection(lines[a], lines[b]) != points[m.flat_index(a, b)]:
            return False
    for i, f in enumerate(m.flats):
        if any(not plane.incident(points[i], lines[e]) for e in f):
            return False
    return True


def _element_order(m: Rank3SimpleMatroid, head):
    # most nontrivial flats first: those elements force the most points
    rest = [e for e in m.elements if e not in head]
    rest.sort(key=lambda e: -sum(1 for i in m.flats_containing(e) if len(m.flats[i]) >= 3))
    return list(head) + rest


class _Search:
    def __init__(self, m: Rank3SimpleMatroid, plane: ProjectivePlane):
        self.m = m
        self.plane = plane
        self.line_of: dict = {}
        self.point_of: dict = {}
        self.owner: dict = {}

    def candidates(self, e):
        plane = self.plane
        known = {self.point_of[i] for i in self.m.flats_containing(e) if i in self.point_of}
        used = set(self.line_of.values())
        if known:
            sets = [plane.through_point[plane.point_index[x]] for x in known]
            idx = sorted(frozenset.intersection(*sets))
        else:
            idx = range(len(plane.lines))
        return [plane.lines[j] for j in idx if plane.lines[j] not in used]

    def place(self, e, line):
        """Assign ``line`` to ``e``; return the new flat points, or None on conflict."""
        added = []
        for other, l2 in self.line_of.items():
            x = self.plane.line_intersection(line, l2)
            f = self.m.flat_index(e, other)
            have = self.point_of.get(f)
            if have is None:
                if x in self.owner:
                    self.undo(added)
                    return None
                self.point_of[f] = x
                self.owner[x] = f
                added.append(f)
            elif have != x:
                self.undo(added)
                return None
        self.line_of[e] = line
        return added

    def undo(self, added):
        for f in added:
            del self.owner[self.point_of.pop(f)]

    def remove(self, e, added):
        del self.line_of[e]
        self.undo(added)

    def run(self, order, i):
        if i == len(order):
            return True
        e = order[i]
        for line in self.candidates(e):
            added = self.place(e, line)
            if added is None:
                continue
            if self.run(order, i + 1):
                return True
            self.remove(e, added)
        return False

    def result(self):
        return Realization(dict(self.line_of), dict(self.point_of), self.plane.p)


def _frame_start(m: Rank3SimpleMatroid, plane: ProjectivePlane):
    """Search state with a basis pinned to the coordinate triangle."""
    e1, e2 = m.elements[0], m.elements[1]
    e3 = complete_to_basis(m, e1, e2)
    s = _Search(m, plane)
    f12, f23, f13 = m.flat_index(e1, e2), m.flat_index(e2, e3), m.flat_index(e1, e3)
    for f, x in zip((f12, f23, f13), FRAME):
        s.point_of[f] = x
        s.owner[x] = f
    for e, (x, y) in ((e1, (FRAME[0], FRAME[2])), (e2, (FRAME[0], FRAME[1])), (e3, (FRAME[1], FRAME[2]))):
        line = plane.line_through(x, y)
        if s.place(e, line) is None:
            return s, [e1, e2, e3], False
    return s, [e1, e2, e3], True


def _prepare(m, plane, pin_frame):
    if pin_frame and len(m.elements) >= 3:
        s, head, ok = _frame_start(m, plane)
        return s, _element_order(m, head), len(head), ok
    return _Search(m, plane), _element_order(m, []), 0, True


def _branch(args):
    m, p, pin_frame, line = args
    plane = build_plane(p, max_prime=max(p, DEFAULT_MAX_PRIME))
    s, order, start, ok = _prepare(m, plane, pin_frame)
    if not ok:
        return None
    added = s.place(order[start], line)
    if added is None:
        return None
    return s.result() if s.run(order, start + 1) else None


def search_realization(m: Rank3SimpleMatroid, p: int, *, pin_frame: bool = True,
                       workers: int = 1, max_prime: int = DEFAULT_MAX_PRIME):
    """Return a :class:`Realization` over GF(p), or None if none exists.

    The search is complete, so None certifies non-realizability over GF(p).
    With ``pin_frame`` a basis is sent to the coordinate triangle; every
    realization is projectively equivalent to one of that form.
    With ``workers > 1`` the first free element's line choices are split
    across processes and the branch earliest in enumeration order wins, so
    the witness does not depend on the worker count.
    """
    plane = build_plane(p, max_prime=max_prime)
    s, order, start, ok = _prepare(m, plane, pin_frame)
    if not ok:
        return None
    if start == len(order):
        found = s.result()
    elif workers <= 1:
        found = s.result() if s.run(order, start) else None
    else:
        branches = [(m, p, pin_frame, line) for line in s.candidates(order[start])]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_branch, branches))
        found = next((r for r in results if r is not None), None)
    if found is not None and not is_realization(m, plane, found):
        raise AssertionError("search produced an invalid realization")
    return found


@dataclass(frozen=True)
class Verdict:
    p: int
    witness: Realization | None

    @property
    def found(self) -> bool:
        return self.witness is not None

    @property
    def label(self) -> str:
        return "found" if self.found else "not_found"


def realizability_report(m: Rank3SimpleMatroid, primes, *, workers: int = 1,
                         max_prime: int = DEFAULT_MAX_PRIME) -> dict:
    report = {}
    for p in primes:
        v = Verdict(p, search_realization(m, p, workers=workers, max_prime=max_prime))
        if v.found and not is_realization(m, build_plane(p, max_prime), v.witness):
            raise AssertionError(f"witness over GF({p}) failed re-verification")
        report[p] = v
    return report


def arrangement_matroid(plane: ProjectivePlane, lines, names=None) -> Rank3SimpleMatroid:
    """Matroid of a set of lines in ``plane`` (the inverse direction of a realization)."""
    from .matroid import from_arrangement

    k = plane.field
    lines = [k.normalize(l) for l in lines]
    incidence = {}
    for j, x in enumerate(plane.points):
        incidence[x] = {l for l in lines if plane.incident(x, l)}
    return from_arrangement(lines, incidence, names)
