"""Compare the compiled and pure-Python reduction kernels.

    python benchmarks/bench_dhar.py [--repeat N]

Prints wall time per backend for q-reduction over the random corpus and for
two rank computations, plus the speedup.
"""

import argparse
import time

from divforge import kernels
from divforge.acceptance import fig3_divisor, fig3_graph
from divforge.divisors import _structure, rank
from divforge.graph import virtualize
from divforge.levi import levi_graph
from divforge.matroid import fano
from divforge.oracles import corpus


def _reduce_workload():
    jobs = []
    for g, d in corpus(size=200):
        vm = virtualize(g)
        h = vm.virtual_graph
        adj, dist = _structure(h, 0)
        jobs.append((adj, dist, list(vm.push(d).values)))
    return jobs


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    jobs = _reduce_workload()
    lc = levi_graph(fano())
    chain, chain_d = fig3_graph(), fig3_divisor()
    workloads = {
        "reduce x200": lambda b: [kernels.reduce_chips(a, d, c, 0, b) for a, d, c in jobs],
        "rank levi(fano)": lambda b: rank(lc.graph, lc.divisor, backend=b),
        "rank (3,7) chain": lambda b: rank(chain, chain_d, backend=b),
    }
    backends = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])
    print(f"{'workload':<20}" + "".join(f"{b:>12}" for b in backends) + ("   speedup" if len(backends) > 1 else ""))
    for name, fn in workloads.items():
        times = [_time(lambda: fn(b), args.repeat) for b in backends]
        row = f"{name:<20}" + "".join(f"{t * 1000:>10.1f}ms" for t in times)
        if len(times) > 1:
            row += f"  {times[0] / times[1]:>7.1f}x"
        print(row)
    if len(backends) == 1:
        print("compiled kernel not built; only the Python backend was timed")


if __name__ == "__main__":
    main()
