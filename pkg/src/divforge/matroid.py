"""Rank-3 simple matroids given by their flats."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .errors import DegenerateMatroid, InvalidMatroid, UsageError


@dataclass(frozen=True)
class Rank3SimpleMatroid:
    """Elements plus flats such that every pair lies in exactly one flat.

    Build instances with :func:`validate`; the constructor itself does not
    check the axioms. Flats are frozensets in input order and are referred
    to by index.
    """

    elements: tuple
    flats: tuple

    def __post_init__(self):
        pair_flat = {}
        for i, flat in enumerate(self.flats):
            for a, b in combinations(flat, 2):
                pair_flat[frozenset((a, b))] = i
        object.__setattr__(self, "_pair_flat", pair_flat)

    def flat_index(self, e1, e2) -> int:
        if e1 == e2:
            raise UsageError("distinct-elements", f"flat_of_pair needs two distinct elements, got {e1!r} twice")
        for e in (e1, e2):
            if e not in self.elements:
                raise UsageError("element-domain", f"unknown element {e!r}")
        return self._pair_flat[frozenset((e1, e2))]

    def flat_of_pair(self, e1, e2) -> frozenset:
        return self.flats[self.flat_index(e1, e2)]

    def flats_containing(self, e) -> list[int]:
        return [i for i, f in enumerate(self.flats) if e in f]

    def to_json(self) -> dict:
        order = {e: i for i, e in enumerate(self.elements)}
        return {"elements": [str(e) for e in self.elements],
                "flats": [[str(e) for e in sorted(f, key=order.__getitem__)] for f in self.flats]}

    @classmethod
    def from_json(cls, data) -> "Rank3SimpleMatroid":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            elements = [str(e) for e in data["elements"]]
            flats = [[str(e) for e in f] for f in data["flats"]]
        except (KeyError, TypeError) as exc:
            raise UsageError("matroid-schema", f"malformed matroid JSON: {exc}") from None
        return validate(elements, flats)


def violations(elements, flats) -> list[tuple[str, str]]:
    """List every broken axiom as ``(invariant, message)`` pairs."""
    found = []
    elements = list(elements)
    if len(set(elements)) != len(elements):
        found.append(("distinct-elements", "element identifiers repeat"))
    eset = set(elements)
    sets = [frozenset(f) for f in flats]
    if len(sets) < 2:
        found.append(("two-flats", f"need at least two flats, got {len(sets)}"))
    for i, (raw, f) in enumerate(zip(flats, sets)):
        if len(f) != len(list(raw)):
            found.append(("flat-distinct-members", f"flat {i} lists an element twice"))
        if f - eset:
            found.append(("flat-domain", f"flat {i} has unknown elements {sorted(map(str, f - eset))}"))
        if len(f) < 2:
            found.append(("flat-size", f"flat {i} has fewer than two elements"))
    seen = {}
    for i, f in enumerate(sets):
        if f in seen:
            found.append(("distinct-flats", f"flats {seen[f]} and {i} coincide"))
        else:
            seen[f] = i
    for a, b in combinations(elements, 2):
        holders = [i for i, f in enumerate(sets) if a in f and b in f]
        if not holders:
            found.append(("pair-in-one-flat", f"pair ({a}, {b}) lies in no flat"))
        elif len(holders) > 1:
            found.append(("pair-in-one-flat", f"pair ({a}, {b}) lies in flats {holders}"))
    return found


def validate(elements, flats) -> Rank3SimpleMatroid:
    """Return a matroid, or raise :class:`InvalidMatroid` listing all violations."""
    problems = violations(elements, flats)
    if problems:
        raise InvalidMatroid(problems)
    elements = tuple(elements)
    return Rank3SimpleMatroid(elements, tuple(frozenset(f) for f in flats))


def is_basis(m: Rank3SimpleMatroid, e1, e2, e3) -> bool:
    if len({e1, e2, e3}) != 3:
        raise UsageError("distinct-elements", "a basis candidate needs three distinct elements")
    return len({m.flat_index(e1, e2), m.flat_index(e2, e3), m.flat_index(e1, e3)}) == 3


def complete_to_basis(m: Rank3SimpleMatroid, e1, e2):
    """First element, in element order, that forms a basis with ``e1, e2``."""
    f = m.flat_of_pair(e1, e2)
    for e in m.elements:
        if e not in f:
            return e
    raise DegenerateMatroid("basis-completion", f"no element completes ({e1}, {e2}): degenerate matroid (rank < 3)")


def fano() -> Rank3SimpleMatroid:
    flats = ["123", "145", "167", "246", "257", "347", "356"]
    return validate([str(i) for i in range(1, 8)], [list(f) for f in flats])


def non_fano() -> Rank3SimpleMatroid:
    """Fano with the flat {3,5,6} broken into three two-element flats."""
    flats = ["123", "145", "167", "246", "257", "347", "35", "56", "36"]
    return validate([str(i) for i in range(1, 8)], [list(f) for f in flats])


def uniform_33() -> Rank3SimpleMatroid:
    return validate(["1", "2", "3"], [["1", "2"], ["1", "3"], ["2", "3"]])


def from_arrangement(lines, incidence, names=None) -> Rank3SimpleMatroid:
    """Matroid of a line arrangement.

    ``lines`` are line identifiers and ``incidence`` maps each point to the
    set of lines through it (points meeting fewer than two lines are
    ignored). Flats are the concurrent classes, ordered by point order.
    """
    lines = list(lines)
    if len(set(lines)) != len(lines):
        raise UsageError("distinct-lines", "arrangement repeats a line")
    names = names or {l: str(l) for l in lines}
    flats = []
    for point, through in incidence.items():
        hit = [names[l] for l in lines if l in through]
        if len(hit) >= 2:
            flats.append(hit)
    return validate([names[l] for l in lines], flats)


def isomorphism(m1: Rank3SimpleMatroid, m2: Rank3SimpleMatroid):
    """Element bijection carrying flats of ``m1`` onto flats of ``m2``, or None.

    Backtracking over elements, pruned by the multiset of flat sizes each
    element sits in and by the flat structure of already-mapped pairs.
    """
    if len(m1.elements) != len(m2.elements) or len(m1.flats) != len(m2.flats):
        return None
    if sorted(map(len, m1.flats)) != sorted(map(len, m2.flats)):
        return None

    def profile(m, e):
        return tuple(sorted(len(m.flats[i]) for i in m.flats_containing(e)))

    p1 = {e: profile(m1, e) for e in m1.elements}
    p2 = {e: profile(m2, e) for e in m2.elements}
    order = list(m1.elements)
    target = set(m2.flats)
    mapping: dict = {}
    used: set = set()

    def consistent(a, b):
        for x, y in mapping.items():
            fx = m1.flat_of_pair(a, x)
            fy = m2.flat_of_pair(b, y)
            if len(fx) != len(fy):
                return False
            for z in fx:
                if z in mapping and mapping[z] not in fy:
                    return False
        return True

    def extend(i):
        if i == len(order):
            return {frozenset(mapping[e] for e in f) for f in m1.flats} == target
        a = order[i]
        for b in m2.elements:
            if b in used or p1[a] != p2[b] or not consistent(a, b):
                continue
            mapping[a] = b
            used.add(b)
            if extend(i + 1):
                return True
            del mapping[a]
            used.discard(b)
        return False

    return dict(mapping) if extend(0) else None


def is_isomorphic(m1, m2) -> bool:
    return isomorphism(m1, m2) is not None
