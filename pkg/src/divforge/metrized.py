"""Divisors on metrized complexes with unit edges and genus <= 1 components.

Rational components are exact by degree. An elliptic component is the cyclic
group Z/N: each named point carries a group element, and a degree-zero
divisor is principal iff its weighted label sum vanishes.

Rational functions on the complex have a graph part (vertex values plus
integer-slope profiles with at most ``segments`` pieces and breakpoints on a
``1/grid`` lattice) and component parts given as formal principal divisors.
Orders of vanishing use the incoming-slope convention: the chip at a point is
the sum over directions of the rate at which ``f`` grows while moving into
the point. Negative answers from the searches are bounded certificates.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Mapping

from .errors import UsageError
from .graph import Divisor, WeightedMultigraph

GENERIC = "*"


@dataclass(frozen=True)
class ComponentModel:
    """``kind`` is ``"rational"`` or ``"elliptic"``; ``labels`` maps point names to Z/order."""

    kind: str
    order: int | None = None
    labels: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("rational", "elliptic"):
            raise UsageError("component-kind", f"unknown component kind {self.kind!r}")
        if self.kind == "elliptic":
            if not self.order or self.order < 2:
                raise UsageError("group-order", "elliptic components need a group order >= 2")
            vals = [v % self.order for v in self.labels.values()]
            if len(set(vals)) != len(vals):
                raise UsageError("distinct-points", "two named points share a group element")

    @property
    def genus(self) -> int:
        return 1 if self.kind == "elliptic" else 0

    def label(self, name) -> int:
        if isinstance(name, str) and name.startswith("#"):
            return int(name[1:]) % self.order
        try:
            return self.labels[name] % self.order
        except KeyError:
            raise UsageError("point-domain", f"no named point {name!r} on this component") from None

    def group_sum(self, div: Mapping) -> int:
        return sum(c * self.label(x) for x, c in div.items()) % self.order

    def is_principal(self, div: Mapping) -> bool:
        if sum(div.values()) != 0:
            return False
        return self.kind == "rational" or self.group_sum(div) == 0

    def equivalent_to_effective(self, div: Mapping) -> bool:
        deg = sum(div.values())
        if self.kind == "rational":
            return deg >= 0
        return deg > 0 or (deg == 0 and self.group_sum(div) == 0)

    def effective_representative(self, div: Mapping, anchor=None) -> dict:
        """An effective divisor equivalent to ``div`` (which must admit one)."""
        deg = sum(div.values())
        if self.kind == "rational" or deg == 0:
            if deg == 0:
                return {}
            return {anchor: deg}
        base = self.label(anchor)
        rest = (self.group_sum(div) - (deg - 1) * base) % self.order
        out = {anchor: deg - 1} if deg > 1 else {}
        name = next((n for n, l in self.labels.items() if l % self.order == rest), f"#{rest}")
        out[name] = out.get(name, 0) + 1
        return out


def rational() -> ComponentModel:
    return ComponentModel("rational")


def elliptic(order: int, labels: Mapping) -> ComponentModel:
    return ComponentModel("elliptic", order, dict(labels))


@dataclass(frozen=True)
class MetrizedComplex:
    """Unit-length metric graph with a component at each vertex.

    ``marked[i] = (name_at_tail, name_at_head)`` for edge ``i = (tail, head)``.
    """

    graph: WeightedMultigraph
    components: Mapping
    marked: tuple

    def __post_init__(self):
        g = self.graph
        if set(self.components) != set(g.vertices):
            raise UsageError("components-domain", "every vertex needs exactly one component")
        if len(self.marked) != len(g.edges):
            raise UsageError("marked-points", "one marked pair per edge is required")
        seen = set()
        for (a, b), (x, y) in zip(g.edges, self.marked):
            for v, name in ((a, x), (b, y)):
                if (v, name) in seen:
                    raise UsageError("nodal-condition", f"marked point {name!r} on {v!r} used by two edges")
                seen.add((v, name))
                comp = self.components[v]
                if comp.kind == "elliptic" and name not in comp.labels:
                    raise UsageError("point-domain", f"marked point {name!r} on {v!r} has no group element")

    def genus(self) -> int:
        g = self.graph
        return len(g.edges) - g.n + 1 + sum(c.genus for c in self.components.values())

    def marked_on(self, v) -> list:
        out = []
        for (a, b), (x, y) in zip(self.graph.edges, self.marked):
            if a == v:
                out.append(x)
            if b == v:
                out.append(y)
        return out

    def named_points(self, v) -> list:
        names = list(self.marked_on(v))
        for n in self.components[v].labels:
            if n not in names:
                names.append(n)
        return names

    def to_json(self) -> dict:
        verts = []
        for v in self.graph.vertices:
            c = self.components[v]
            entry = {"id": v, "component": "rational" if c.kind == "rational" else {"elliptic": c.order}}
            if c.labels:
                entry["points"] = dict(c.labels)
            verts.append(entry)
        return {"vertices": verts, "edges": [[a, b] for a, b in self.graph.edges],
                "marked": [[x, y] for x, y in self.marked]}

    @classmethod
    def from_json(cls, data) -> "MetrizedComplex":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            verts = [v["id"] for v in data["vertices"]]
            comps = {}
            for v in data["vertices"]:
                spec = v.get("component", "rational")
                if spec == "rational":
                    comps[v["id"]] = ComponentModel("rational", None, dict(v.get("points", {})))
                else:
                    comps[v["id"]] = elliptic(int(spec["elliptic"]), v.get("points", {}))
            edges = [tuple(e) for e in data["edges"]]
            marked = tuple(tuple(m) for m in data["marked"])
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError("complex-schema", f"malformed complex JSON: {exc}") from None
        # vertex weights mirror component genus, as in the weighted-graph model
        weights = {v: c.genus for v, c in comps.items()}
        return cls(WeightedMultigraph(verts, edges, weights), comps, marked)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class MCDivisor:
    """Chips on component points ``(vertex, name)`` and on edge interiors ``(edge, t)``."""

    comp: Mapping = field(default_factory=dict)
    edge: Mapping = field(default_factory=dict)

    def __post_init__(self):
        comp = {k: int(c) for k, c in self.comp.items() if c}
        edge = {}
        for (i, t), c in self.edge.items():
            t = _frac(t)
            if not 0 < t < 1:
                raise UsageError("edge-position", f"edge chip at {t} is not interior")
            if c:
                edge[(i, t)] = edge.get((i, t), 0) + int(c)
        object.__setattr__(self, "comp", dict(sorted(comp.items(), key=repr)))
        object.__setattr__(self, "edge", dict(sorted(edge.items())))

    def degree(self) -> int:
        return sum(self.comp.values()) + sum(self.edge.values())

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.comp.values()) and all(c >= 0 for c in self.edge.values())

    def restrict(self, v) -> dict:
        return {x: c for (u, x), c in self.comp.items() if u == v}

    def __add__(self, other):
        comp = dict(self.comp)
        for k, c in other.comp.items():
            comp[k] = comp.get(k, 0) + c
        edge = dict(self.edge)
        for k, c in other.edge.items():
            edge[k] = edge.get(k, 0) + c
        return MCDivisor(comp, edge)

    def __neg__(self):
        return MCDivisor({k: -c for k, c in self.comp.items()}, {k: -c for k, c in self.edge.items()})

    def __sub__(self, other):
        return self + (-other)

    def to_json(self) -> dict:
        comps: dict = {}
        for (v, x), c in self.comp.items():
            comps.setdefault(str(v), {})[str(x)] = c
        edges: dict = {}
        for (i, t), c in self.edge.items():
            edges.setdefault(str(i), {})[str(t)] = c
        return {"components": comps, "edges": edges}

    @classmethod
    def from_json(cls, data) -> "MCDivisor":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            comp = {(v, x): c for v, pts in data.get("components", {}).items() for x, c in pts.items()}
            edge = {(int(i), Fraction(t)): c for i, pts in data.get("edges", {}).items() for t, c in pts.items()}
        except (TypeError, ValueError, AttributeError) as exc:
            raise UsageError("divisor-schema", f"malformed complex divisor JSON: {exc}") from None
        return cls(comp, edge)


@dataclass(frozen=True)
class MCFunction:
    """Rational function on a complex.

    ``profiles[i]`` lists ``(length, slope)`` pieces from tail to head of
    edge ``i``; ``parts[v] = (zeros, poles)`` is the component part's divisor.
    """

    values: Mapping
    profiles: Mapping
    parts: Mapping = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "values": {str(v): str(x) for v, x in self.values.items()},
            "slopes": {str(i): [[str(l), s] for l, s in prof] for i, prof in sorted(self.profiles.items())},
            "parts": {str(v): {"zeros": dict(z), "poles": dict(p)} for v, (z, p) in self.parts.items()},
        }


def check_function(cx: MetrizedComplex, f: MCFunction):
    """Raise :class:`UsageError` if ``f`` is not a valid function on ``cx``."""
    for i, (a, b) in enumerate(cx.graph.edges):
        prof = f.profiles.get(i, ((Fraction(1), 0),))
        if sum(_frac(l) for l, _ in prof) != 1 or any(_frac(l) <= 0 for l, _ in prof):
            raise UsageError("edge-profile", f"edge {i} pieces must have positive lengths summing to 1")
        rise = sum(_frac(l) * s for l, s in prof)
        if _frac(f.values.get(b, 0)) - _frac(f.values.get(a, 0)) != rise:
            raise UsageError("continuity", f"edge {i} slopes do not match its endpoint values")
    for v, (zeros, poles) in f.parts.items():
        diff = dict(zeros)
        for x, c in poles.items():
            diff[x] = diff.get(x, 0) - c
        if not cx.components[v].is_principal(diff):
            raise UsageError("principal-part", f"component part at {v!r} is not a principal divisor")


def mc_div(cx: MetrizedComplex, f: MCFunction) -> MCDivisor:
    check_function(cx, f)
    comp: dict = {}
    edge: dict = {}
    for v, (zeros, poles) in f.parts.items():
        for x, c in zeros.items():
            comp[(v, x)] = comp.get((v, x), 0) + c
        for x, c in poles.items():
            comp[(v, x)] = comp.get((v, x), 0) - c
    for i, ((a, b), (x, y)) in enumerate(zip(cx.graph.edges, cx.marked)):
        prof = f.profiles.get(i, ((Fraction(1), 0),))
        comp[(a, x)] = comp.get((a, x), 0) - prof[0][1]
        comp[(b, y)] = comp.get((b, y), 0) + prof[-1][1]
        t = Fraction(0)
        for (l1, s1), (_, s2) in zip(prof, prof[1:]):
            t += _frac(l1)
            if s1 != s2:
                edge[(i, t)] = edge.get((i, t), 0) + s1 - s2
    out = MCDivisor(comp, edge)
    assert out.degree() == 0
    return out


def forget(cx: MetrizedComplex, d: MCDivisor) -> Divisor:
    """Finite-graph divisor obtained by summing chips on each component."""
    if d.edge:
        raise UsageError("vertex-supported", "edge-interior chips have no image on the finite graph")
    chips = {v: 0 for v in cx.graph.vertices}
    for (v, _), c in d.comp.items():
        chips[v] += c
    return Divisor(cx.graph, chips)


@dataclass(frozen=True)
class Bounds:
    """Search window: slopes in ``[-slope, slope]``, breakpoints on a ``1/grid`` lattice."""

    slope: int = 4
    grid: int = 4
    segments: int = 2


@dataclass(frozen=True)
class SearchResult:
    """``witness`` is set on success; otherwise the answer is only 'none within bounds'."""

    witness: MCFunction | None
    bounds: Bounds

    @property
    def found(self) -> bool:
        return self.witness is not None

    @property
    def label(self) -> str:
        return "yes" if self.found else "no_within_bounds"


def _profiles(rise: Fraction, b: Bounds):
    """Edge profiles with the given total rise, as ((pieces), tail_in, head_in, kink)."""
    out = []
    S = b.slope
    if rise.denominator == 1 and abs(rise) <= S:
        s = int(rise)
        out.append((((Fraction(1), s),), -s, s, None))
    if b.segments >= 2:
        for k in range(1, b.grid):
            t = Fraction(k, b.grid)
            for s1 in range(-S, S + 1):
                s2 = (rise - s1 * t) / (1 - t)
                if s2.denominator != 1 or abs(s2) > S or s2 == s1:
                    continue
                s2 = int(s2)
                out.append((((t, s1), (1 - t, s2)), -s1, s2, (t, s1 - s2)))
    return out


def _potentials(cx: MetrizedComplex, b: Bounds):
    """Vertex values with the first vertex at 0, smallest total change first."""
    g = cx.graph
    order = g.bfs_order(g.vertices[0])
    parent = {}
    adj = {v: set() for v in g.vertices}
    for a, c in g.edges:
        adj[a].add(c)
        adj[c].add(a)
    seen = {order[0]}
    for v in order:
        for w in sorted(adj[v], key=g.index):
            if w not in seen:
                seen.add(w)
                parent[w] = v
    steps = [Fraction(k, b.grid) for k in range(-b.slope * b.grid, b.slope * b.grid + 1)]
    steps.sort(key=lambda x: (abs(x), x))
    tree = order[1:]
    combos = sorted(product(range(len(steps)), repeat=len(tree)),
                    key=lambda idx: (sum(abs(steps[i]) for i in idx), idx))
    for idx in combos:
        vals = {order[0]: Fraction(0)}
        for v, i in zip(tree, idx):
            vals[v] = vals[parent[v]] + steps[i]
        if all(abs(vals[c] - vals[a]) <= b.slope for a, c in g.edges):
            yield vals


class _Rule:
    """Per-component acceptance test, accumulated additively over edges."""

    def start(self, v):
        raise NotImplementedError

    def add(self, v, state, point, slope):
        raise NotImplementedError

    def ok(self, v, state) -> bool:
        raise NotImplementedError

    def prune(self, v, state) -> bool:
        return False

    def part(self, v, state_points):
        raise NotImplementedError


class _Effective(_Rule):
    """``D_v + slopes`` must be equivalent to an effective divisor on the component."""

    def __init__(self, cx, d):
        self.cx = cx
        self.base = {v: d.restrict(v) for v in cx.graph.vertices}

    def start(self, v):
        c = self.cx.components[v]
        deg = sum(self.base[v].values())
        return (deg, c.group_sum(self.base[v]) if c.kind == "elliptic" else 0)

    def add(self, v, state, point, slope):
        c = self.cx.components[v]
        if c.kind == "elliptic":
            return (state[0] + slope, (state[1] + slope * c.label(point)) % c.order)
        return (state[0] + slope, 0)

    def ok(self, v, state):
        deg, s = state
        if self.cx.components[v].kind == "rational":
            return deg >= 0
        return deg > 0 or (deg == 0 and s == 0)

    def part(self, v, total: dict):
        comp = self.cx.components[v]
        anchor = (self.cx.marked_on(v) or list(comp.labels) or [GENERIC])[0]
        target = comp.effective_representative(total, anchor)
        zeros = {x: -c for x, c in total.items() if c < 0}
        poles = {x: c for x, c in total.items() if c > 0}
        for x, c in target.items():
            zeros[x] = zeros.get(x, 0) + c
        return _tidy(zeros, poles)


class _Sections(_Rule):
    """Rational components with section spaces {f : div f >= -A_v}, deg A_v = r."""

    def __init__(self, cx, d, anchors, r):
        self.cx = cx
        self.r = r
        self.anchors = anchors
        self.base = {}
        for v in cx.graph.vertices:
            t = d.restrict(v)
            for x, c in anchors.get(v, {}).items():
                t[x] = t.get(x, 0) - c
            self.base[v] = t
        self.marked = {v: set(cx.marked_on(v)) for v in cx.graph.vertices}

    def start(self, v):
        return sum(-c for x, c in self.base[v].items() if c < 0 and x not in self.marked[v])

    def add(self, v, state, point, slope):
        return state + max(0, -(self.base[v].get(point, 0) + slope))

    def prune(self, v, state):
        return state > self.r

    def ok(self, v, state):
        return state <= self.r

    def part(self, v, total: dict):
        # div f_v = B - A_v with B the negative part of the remainder, topped up to degree r
        zeros = {x: -c for x, c in total.items() if c < 0}
        spare = self.r - sum(zeros.values())
        if spare:
            where = GENERIC if self.cx.components[v].kind == "rational" else next(iter(self.marked[v]))
            zeros[where] = zeros.get(where, 0) + spare
        return _tidy(zeros, dict(self.anchors.get(v, {})))


def _tidy(zeros, poles):
    z = dict(zeros)
    p = dict(poles)
    for x in set(z) & set(p):
        m = min(z[x], p[x])
        z[x] -= m
        p[x] -= m
    return ({x: c for x, c in sorted(z.items(), key=repr) if c},
            {x: c for x, c in sorted(p.items(), key=repr) if c})


def _search(cx: MetrizedComplex, d: MCDivisor, b: Bounds, rule: _Rule):
    g = cx.graph
    verts = list(g.vertices)
    vi = {v: i for i, v in enumerate(verts)}
    for (i, t), _ in d.edge.items():
        if (t * b.grid).denominator != 1:
            raise UsageError("breakpoint-grid", f"edge chip at {t} is off the 1/{b.grid} grid")
    edge_chips = {}
    for (i, t), c in d.edge.items():
        edge_chips.setdefault(i, {})[t] = c
    remaining = [0] * len(verts)
    for a, c in g.edges:
        remaining[vi[a]] += 1
        remaining[vi[c]] += 1
    cache: dict = {}
    for vals in _potentials(cx, b):
        options = []
        for i, (a, c) in enumerate(g.edges):
            rise = vals[c] - vals[a]
            if rise not in cache:
                cache[rise] = _profiles(rise, b)
            chips = edge_chips.get(i, {})
            opts = []
            for prof in cache[rise]:
                kink = prof[3]
                if any(n + (kink[1] if kink and kink[0] == t else 0) < 0 for t, n in chips.items()):
                    continue
                if kink and chips.get(kink[0], 0) + kink[1] < 0:
                    continue
                opts.append(prof)
            if not opts:
                break
            options.append(opts)
        else:
            found = _dp(cx, rule, options, verts, vi, remaining)
            if found is not None:
                return _witness(cx, d, rule, vals, found)
    return None


def _dp(cx, rule, options, verts, vi, remaining):
    """Pick one profile per edge so every component passes ``rule``."""
    g = cx.graph
    start = tuple(rule.start(v) for v in verts)
    layer = {start: ()}
    left = list(remaining)
    for i, ((a, c), (x, y)) in enumerate(zip(g.edges, cx.marked)):
        ia, ic = vi[a], vi[c]
        left[ia] -= 1
        left[ic] -= 1
        nxt: dict = {}
        for state, picks in layer.items():
            for k, prof in enumerate(options[i]):
                st = list(state)
                st[ia] = rule.add(a, st[ia], x, prof[1])
                st[ic] = rule.add(c, st[ic], y, prof[2])
                if rule.prune(a, st[ia]) or rule.prune(c, st[ic]):
                    continue
                if (left[ia] == 0 and not rule.ok(a, st[ia])) or (left[ic] == 0 and not rule.ok(c, st[ic])):
                    continue
                key = tuple(st)
                if key not in nxt:
                    nxt[key] = picks + (k,)
        layer = nxt
        if not layer:
            return None
    for state, picks in layer.items():
        if all(rule.ok(v, s) for v, s in zip(verts, state)):
            return [options[i][k] for i, k in enumerate(picks)]
    return None


def _witness(cx, d, rule, vals, profiles):
    g = cx.graph
    totals = {v: dict(rule.base[v]) for v in g.vertices}
    for (a, c), (x, y), prof in zip(g.edges, cx.marked, profiles):
        totals[a][x] = totals[a].get(x, 0) + prof[1]
        totals[c][y] = totals[c].get(y, 0) + prof[2]
    parts = {v: rule.part(v, totals[v]) for v in g.vertices}
    parts = {v: p for v, p in parts.items() if p[0] or p[1]}
    return MCFunction(dict(vals), {i: prof[0] for i, prof in enumerate(profiles)}, parts)


def mc_equiv_effective_bounded(cx: MetrizedComplex, d: MCDivisor, bounds: Bounds | None = None) -> SearchResult:
    """Look for a function within ``bounds`` making ``d + div(f)`` effective."""
    b = bounds or Bounds(slope=max(1, abs(d.degree())))
    if d.degree() < 0:
        return SearchResult(None, b)
    if d.is_effective():
        return SearchResult(MCFunction({v: Fraction(0) for v in cx.graph.vertices}, {}, {}), b)
    f = _search(cx, d, b, _Effective(cx, d))
    if f is not None and not (d + mc_div(cx, f)).is_effective():
        raise AssertionError("witness failed re-verification")
    return SearchResult(f, b)


def _fresh_label(comp: ComponentModel, avoid=()) -> int:
    used = {l % comp.order for l in comp.labels.values()} | {a % comp.order for a in avoid} | {0}
    rng = random.Random(comp.order * 7919 + len(used))
    while True:
        x = rng.randrange(1, comp.order)
        if x not in used:
            return x


def with_generic(cx: MetrizedComplex, d: MCDivisor | None = None) -> MetrizedComplex:
    """Add a fresh point named ``*`` to every component (a new group element on elliptic ones)."""
    comps = {}
    for v, c in cx.components.items():
        if GENERIC in c.labels:
            comps[v] = c
        elif c.kind == "elliptic":
            comps[v] = elliptic(c.order, {**c.labels, GENERIC: _fresh_label(c)})
        else:
            comps[v] = c
    return MetrizedComplex(cx.graph, comps, cx.marked)


def _test_divisors(cx: MetrizedComplex, r: int, include_marked: bool, d: MCDivisor | None = None):
    slots = []
    for v in cx.graph.vertices:
        slots.append((v, GENERIC))
        pts = cx.marked_on(v) if include_marked else []
        if d is not None and not include_marked:
            pts = [x for x in dict.fromkeys(x for (u, x) in d.comp if u == v) if x not in cx.marked_on(v)]
        for x in pts:
            if (v, x) not in slots:
                slots.append((v, x))
    for pick in combinations_with_replacement(range(len(slots)), r):
        chips: dict = {}
        for k in pick:
            chips[slots[k]] = chips.get(slots[k], 0) + 1
        yield MCDivisor(chips)


@dataclass(frozen=True)
class RankVerdict:
    """``rank`` is certified from below; the upper side holds within ``bounds`` only."""

    rank: int
    bounds: Bounds
    failing: MCDivisor | None
    upper_bound_is_bounded: bool = True


def mc_rank_bounded(cx: MetrizedComplex, d: MCDivisor, r_max: int, bounds: Bounds | None = None) -> RankVerdict:
    """Largest ``r <= r_max`` passing every symbolic test divisor of degree ``r``.

    Test divisors sit on marked points or on one fresh generic point per
    component.
    """
    b = bounds or Bounds(slope=max(1, d.degree()))
    cx = with_generic(cx)
    for r in range(0, r_max + 1):
        for e in _test_divisors(cx, r, include_marked=True):
            if not mc_equiv_effective_bounded(cx, d - e, b).found:
                return RankVerdict(r - 1, b, e)
    return RankVerdict(r_max, b, None, upper_bound_is_bounded=False)


@dataclass(frozen=True)
class SectionSpace:
    """Anchors ``A_v``: the space at ``v`` is ``{f : div f >= -A_v}``."""

    anchors: Mapping

    def dimension(self, cx: MetrizedComplex, v) -> int:
        if cx.components[v].kind != "rational":
            raise UsageError("rational-components", "section dimensions are only tracked on rational components")
        return sum(self.anchors.get(v, {}).values()) + 1


@dataclass(frozen=True)
class LimitReport:
    holds: bool
    witnesses: tuple
    failing: MCDivisor | None
    bounds: Bounds


def limit_grd_verify(cx: MetrizedComplex, d: MCDivisor, spaces: SectionSpace, r: int, deg: int,
                     bounds: Bounds | None = None, workers: int = 1, report: bool = False):
    """Check that ``d`` is a limit g^r_d for the given section spaces.

    Every effective test divisor of degree ``r`` supported away from the
    edges (one fresh point per component plus the non-marked points of
    ``d``) must be absorbed by a function whose component parts lie in the
    spaces.
    """
    if d.degree() != deg:
        raise UsageError("degree", f"divisor has degree {d.degree()}, expected {deg}")
    for v, c in cx.components.items():
        if c.kind != "rational":
            raise UsageError("rational-components", f"component at {v!r} is not rational")
        if sum(spaces.anchors.get(v, {}).values()) != r:
            raise UsageError("anchor-degree", f"anchor at {v!r} must have degree {r}")
        if any(n < 0 for n in spaces.anchors.get(v, {}).values()):
            raise UsageError("anchor-effective", f"anchor at {v!r} is not effective")
    if d.edge:
        raise UsageError("vertex-supported", "limit linear series checks need component-supported divisors")
    b = bounds or Bounds(slope=max(1, deg))
    tests = list(_test_divisors(cx, r, include_marked=False, d=d))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            found = list(pool.map(_limit_one, [(cx, d, spaces, r, b, e) for e in tests]))
    else:
        found = [_limit_one((cx, d, spaces, r, b, e)) for e in tests]
    failing = next((e for e, f in zip(tests, found) if f is None), None)
    out = LimitReport(failing is None, tuple(zip(tests, found)), failing, b)
    return out if report else out.holds


def _limit_one(args):
    cx, d, spaces, r, b, e = args
    target = d - e
    f = _search(cx, target, b, _Sections(cx, target, spaces.anchors, r))
    if f is not None:
        _check_admissible(cx, target, f, spaces)
    return f


def _check_admissible(cx, target, f, spaces):
    if not (target + mc_div(cx, f)).is_effective():
        raise AssertionError("limit witness does not make the divisor effective")
    for v, (zeros, poles) in f.parts.items():
        total = dict(zeros)
        for x, c in poles.items():
            total[x] = total.get(x, 0) - c
        for x, c in spaces.anchors.get(v, {}).items():
            total[x] = total.get(x, 0) + c
        if any(c < 0 for c in total.values()):
            raise AssertionError(f"component part at {v!r} leaves its section space")


def build_fig2(order: int = 1009):
    """Path u - v - w of elliptic components; one generic chip on C_u and one on C_w.

    Returns the complex and a list of extensions of the divisor u + w, the
    first being the generic one.
    """
    if order < 5:
        raise UsageError("group-order", "group order must be at least 5")
    g = WeightedMultigraph(["u", "v", "w"], [("u", "v"), ("v", "w")], {"u": 1, "v": 1, "w": 1})
    marked = (("p_uv", "p_vu"), ("p_vw", "p_wv"))
    names = {"u": ["p_uv", "a_u"], "v": ["p_vu", "p_vw"], "w": ["p_wv", "a_w"]}
    rng = random.Random(order)
    labels = rng.sample(range(1, order), 6)
    it = iter(labels)
    comps = {v: elliptic(order, {n: next(it) for n in names[v]}) for v in g.vertices}
    cx = MetrizedComplex(g, comps, marked)
    family = [
        MCDivisor({("u", "a_u"): 1, ("w", "a_w"): 1}),
        MCDivisor({("u", "p_uv"): 1, ("w", "a_w"): 1}),
        MCDivisor({("u", "p_uv"): 1, ("w", "p_wv"): 1}),
    ]
    return cx, family


def build_fig3():
    """Chain C1 =3= C3 =7= C2 of rational curves.

    The first extension is normalized to ``x1`` on C1, ``x3 + y3 + z3`` on
    C3 and two generic chips on C2; the others move chips within their
    component classes.
    """
    g = WeightedMultigraph(["v1", "v3", "v2"], [("v1", "v3")] * 3 + [("v3", "v2")] * 7)
    marked = tuple([(f"{c}1", f"{c}3") for c in "xyz"] + [(f"a{i}", f"b{i}") for i in range(1, 8)])
    comps = {"v1": rational(), "v3": rational(),
             "v2": ComponentModel("rational", None, {"g1": 0, "g2": 0})}
    cx = MetrizedComplex(g, comps, marked)
    base = {("v3", "x3"): 1, ("v3", "y3"): 1, ("v3", "z3"): 1}
    family = [
        MCDivisor({("v1", "x1"): 1, **base, ("v2", "g1"): 1, ("v2", "g2"): 1}),
        MCDivisor({("v1", "z1"): 1, **base, ("v2", "g1"): 2}),
        MCDivisor({("v1", "x1"): 1, **base, ("v2", "b1"): 1, ("v2", "b2"): 1}),
    ]
    return cx, family


def fig3_spaces(d: MCDivisor) -> SectionSpace:
    """Section spaces O(D|C1 + y1), O(D|C2), O(x3 + y3).

    For the normalized extension (D|C1 = x1) the first is O(x1 + y1); moving
    the C1 chip within its class moves the anchor with it.
    """
    a1 = d.restrict("v1")
    a1["y1"] = a1.get("y1", 0) + 1
    return SectionSpace({"v1": a1, "v2": d.restrict("v2"), "v3": {"x3": 1, "y3": 1}})
