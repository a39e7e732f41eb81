"""``divforge`` command line.

Results go to stdout as JSON (or a plain table with ``--pretty``). Exit
codes: 0 success, 1 domain error, 2 usage error. Settings resolve as
flag, then ``DIVFORGE_<NAME>`` environment variable, then default.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import DivforgeError, UsageError

ENV_PREFIX = "DIVFORGE_"
DEFAULTS = {"workers": 1, "max_prime": 13, "slope": 4, "grid": 4, "segments": 2}


def _setting(args, name: str) -> int:
    value = getattr(args, name, None)
    if value is not None:
        return value
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return DEFAULTS[name]
    try:
        return int(raw)
    except ValueError:
        raise UsageError("env-config", f"{ENV_PREFIX}{name.upper()}={raw!r} is not an integer") from None


def _load(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError("input-file", f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError("json-syntax", f"{path}: {exc}") from None


def _write_dot(path: str | None, text: str) -> None:
    if path:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise UsageError("output-file", f"cannot write {path}: {exc.strerror}") from None


def _primes(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _graph_and_divisor(args):
    from .graph import Divisor, WeightedMultigraph

    g = WeightedMultigraph.from_json(_load(args.graph))
    return g, Divisor.from_json(g, _load(args.divisor))


def _matroid(args):
    from .matroid import Rank3SimpleMatroid

    return Rank3SimpleMatroid.from_json(_load(args.matroid))


def _bounds(args):
    from .metrized import Bounds

    return Bounds(slope=_setting(args, "slope"), grid=_setting(args, "grid"),
                  segments=_setting(args, "segments"))


# commands


def cmd_rank(args):
    from .divisors import rank

    g, d = _graph_and_divisor(args)
    _write_dot(args.dot, g.to_dot(d))
    return {"rank": rank(g, d)}


def cmd_reduce(args):
    from .divisors import dhar_reduce

    g, d = _graph_and_divisor(args)
    if args.q not in g.vertices:
        raise UsageError("vertex", f"unknown vertex {args.q!r}")
    red, script = dhar_reduce(g, d, args.q)
    _write_dot(args.dot, g.to_dot(red))
    return {"reduced": red.to_json(), "script": script.to_json(g)}


def cmd_rr_check(args):
    from .divisors import rank
    from .graph import canonical_divisor, genus

    g, d = _graph_and_divisor(args)
    r, r_k = rank(g, d), rank(g, canonical_divisor(g) - d)
    gen = genus(g)
    return {"rank": r, "rank_K_minus_D": r_k, "degree": d.degree(), "genus": gen,
            "holds": r - r_k == d.degree() + 1 - gen}


def cmd_levi(args):
    from .levi import levi_graph

    lc = levi_graph(_matroid(args))
    _write_dot(args.dot, lc.to_dot())
    return {"graph": lc.graph.to_json(), "divisor": lc.divisor.to_json()}


def cmd_dm_rank(args):
    from .divisors import rank
    from .levi import levi_graph

    lc = levi_graph(_matroid(args))
    _write_dot(args.dot, lc.to_dot())
    return {"rank": rank(lc.graph, lc.divisor)}


def cmd_realize(args):
    from .realizability import realizability_report

    m = _matroid(args)
    report = realizability_report(m, args.primes, workers=_setting(args, "workers"),
                                  max_prime=_setting(args, "max_prime"))
    if args.witnesses:
        return {str(p): {"verdict": v.label, "witness": v.witness.to_json(m) if v.found else None}
                for p, v in report.items()}
    return {str(p): v.label for p, v in report.items()}


def _complex_and_divisor(args):
    from .metrized import MCDivisor, MetrizedComplex

    return MetrizedComplex.from_json(_load(args.complex)), MCDivisor.from_json(_load(args.divisor))


def cmd_mc_rank(args):
    from .metrized import mc_rank_bounded

    cx, d = _complex_and_divisor(args)
    v = mc_rank_bounded(cx, d, args.r_max, _bounds(args))
    return {"rank": v.rank, "failing": v.failing.to_json() if v.failing else None,
            "bounds": {"slope": v.bounds.slope, "grid": v.bounds.grid, "segments": v.bounds.segments},
            "upper_bound_within_bounds_only": v.upper_bound_is_bounded}


def cmd_mc_limit(args):
    from .metrized import SectionSpace, limit_grd_verify

    cx, d = _complex_and_divisor(args)
    raw = _load(args.spaces)
    if not isinstance(raw, dict) or not all(isinstance(a, dict) for a in raw.values()):
        raise UsageError("spaces-schema", "section spaces must map vertex -> {point: multiplicity}")
    rep = limit_grd_verify(cx, d, SectionSpace(raw), args.r, args.deg, _bounds(args),
                           workers=_setting(args, "workers"), report=True)
    return {"holds": rep.holds, "tests": len(rep.witnesses),
            "failing": rep.failing.to_json() if rep.failing else None}


def cmd_demo(args):
    from .acceptance import run_all

    rows = run_all()
    if args.json:
        print(json.dumps([r.to_json() for r in rows], indent=None if not args.pretty else 2, default=str))
    else:
        for r in rows:
            print(r.line())
        print(f"{sum(r.passed for r in rows)}/{len(rows)} passed")
    return None if all(r.passed for r in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--json", action="store_true", help="JSON output (default except for demo)")
    common.add_argument("--workers", type=int, help="worker processes (env DIVFORGE_WORKERS, default 1)")

    p = argparse.ArgumentParser(prog="divforge", description="Divisor theory on graphs and matroids.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=fn)
        return sp

    for name, fn, text in [("rank", cmd_rank, "Baker-Norine rank of a divisor"),
                           ("reduce", cmd_reduce, "q-reduced representative"),
                           ("rr-check", cmd_rr_check, "check Riemann-Roch for a divisor")]:
        sp = add(name, fn, text)
        sp.add_argument("--graph", required=True)
        sp.add_argument("--divisor", required=True)
        sp.add_argument("--dot", metavar="FILE")
        if name == "reduce":
            sp.add_argument("--q", required=True, help="base vertex")

    for name, fn, text in [("levi", cmd_levi, "Levi graph and divisor of a matroid"),
                           ("dm-rank", cmd_dm_rank, "rank of the Levi divisor")]:
        sp = add(name, fn, text)
        sp.add_argument("--matroid", required=True)
        sp.add_argument("--dot", metavar="FILE")

    sp = add("realize", cmd_realize, "search realizations over prime fields")
    sp.add_argument("--matroid", required=True)
    sp.add_argument("--primes", type=_primes, default=[2, 3, 5])
    sp.add_argument("--max-prime", type=int, help="env DIVFORGE_MAX_PRIME, default 13")
    sp.add_argument("--witnesses", action="store_true", help="include realizations")

    for name, fn, text in [("mc-rank", cmd_mc_rank, "bounded rank on a metrized complex"),
                           ("mc-limit", cmd_mc_limit, "check a limit linear series")]:
        sp = add(name, fn, text)
        sp.add_argument("--complex", required=True)
        sp.add_argument("--divisor", required=True)
        sp.add_argument("--slope", type=int, help="slope bound (env DIVFORGE_SLOPE, default 4)")
        sp.add_argument("--grid", type=int, help="breakpoint grid (env DIVFORGE_GRID, default 4)")
        sp.add_argument("--segments", type=int, help="pieces per edge (env DIVFORGE_SEGMENTS, default 2)")
        if name == "mc-rank":
            sp.add_argument("--r-max", type=int, default=2)
        else:
            sp.add_argument("--spaces", required=True)
            sp.add_argument("--r", type=int, required=True)
            sp.add_argument("--deg", type=int, required=True)

    add("demo", cmd_demo, "run every reproduction check")
    return p


def _pretty(result: dict) -> str:
    width = max((len(str(k)) for k in result), default=0)
    return "\n".join(f"{str(k).ljust(width)}  {v if not isinstance(v, (dict, list)) else json.dumps(v)}"
                     for k, v in result.items())


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        for name in ("workers", "max_prime", "slope", "grid", "segments"):
            if name in DEFAULTS and hasattr(args, name) and _setting(args, name) < 1:
                raise UsageError("positive-setting", f"{name} must be at least 1")
        result = args.func(args)
    except DivforgeError as exc:
        print(f"divforge: error: {exc}", file=sys.stderr)
        return exc.exit_code
    if isinstance(result, int):
        return result
    if result is not None:
        print(_pretty(result) if args.pretty else json.dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
