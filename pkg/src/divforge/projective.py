"""Prime fields and the projective planes PG(2, p)."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .errors import CapacityError, UsageError

DEFAULT_MAX_PRIME = 13


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise UsageError("prime-modulus", f"{self.p!r} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p)

    def normalize(self, v) -> tuple:
        """Scale a nonzero triple so its first nonzero entry is 1."""
        v = [x % self.p for x in v]
        for x in v:
            if x:
                s = self.inv(x)
                return tuple(y * s % self.p for y in v)
        raise UsageError("nonzero-vector", "the zero vector is not a projective point")

    def dot(self, a, b) -> int:
        return (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) % self.p

    def cross(self, a, b) -> tuple:
        p = self.p
        return ((a[1] * b[2] - a[2] * b[1]) % p,
                (a[2] * b[0] - a[0] * b[2]) % p,
                (a[0] * b[1] - a[1] * b[0]) % p)


@dataclass(frozen=True)
class ProjectivePlane:
    """PG(2, p) with points and lines both as normalized triples.

    Points and lines are listed in lexicographic order of their normalized
    coordinates; ``on_line[i]`` is the set of point indices on line ``i``.
    """

    field: PrimeField
    points: tuple
    lines: tuple
    point_index: dict = field(repr=False, compare=False)
    line_index: dict = field(repr=False, compare=False)
    on_line: tuple = field(repr=False, compare=False)
    through_point: tuple = field(repr=False, compare=False)

    @property
    def p(self) -> int:
        return self.field.p

    def incident(self, point, line) -> bool:
        return self.field.dot(point, line) == 0

    def line_intersection(self, l1, l2) -> tuple:
        l1 = self.field.normalize(l1)
        l2 = self.field.normalize(l2)
        if l1 == l2:
            raise UsageError("distinct-lines", "intersection needs two distinct lines")
        return self.field.normalize(self.field.cross(l1, l2))

    def line_through(self, x, y) -> tuple:
        x = self.field.normalize(x)
        y = self.field.normalize(y)
        if x == y:
            raise UsageError("distinct-points", "a line needs two distinct points")
        return self.field.normalize(self.field.cross(x, y))


def line_intersection(plane: ProjectivePlane, l1, l2) -> tuple:
    return plane.line_intersection(l1, l2)


@lru_cache(maxsize=None)
def _plane(p: int) -> ProjectivePlane:
    k = PrimeField(p)
    triples = sorted({k.normalize(v) for v in product(range(p), repeat=3) if any(v)})
    pts = tuple(triples)
    lns = tuple(triples)
    pidx = {x: i for i, x in enumerate(pts)}
    lidx = {x: i for i, x in enumerate(lns)}
    on_line = tuple(frozenset(i for i, x in enumerate(pts) if k.dot(x, l) == 0) for l in lns)
    through = tuple(frozenset(j for j, l in enumerate(lns) if k.dot(x, l) == 0) for x in pts)
    return ProjectivePlane(k, pts, lns, pidx, lidx, on_line, through)


def build_plane(p: int, max_prime: int = DEFAULT_MAX_PRIME) -> ProjectivePlane:
    if not isinstance(p, int) or not is_prime(p):
        raise UsageError("prime-modulus", f"{p!r} is not prime")
    if p > max_prime:
        raise CapacityError("max-prime", f"p = {p} exceeds the configured bound {max_prime}")
    return _plane(p)
