"""Compare the compiled and pure-Python search kernels.

    python3 benchmarks/bench_kernels.py [--n 4 5] [--repeat 3]

Runs each exhaustive search once per backend and reports wall time, node
count and speedup. Both backends must agree on value and node count.
"""

from __future__ import annotations

import argparse
import sys
import time

from recpairs.search import OBJECTIVES, search
from recpairs.search.kernels import available


def time_search(n: int, objective: str, backend: str, repeat: int) -> tuple[float, int, int]:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        r = search(n, objective, seed_incumbents=False, backend=backend, threads=1)
        best = min(best, time.perf_counter() - t0)
    return best, r.best_value, r.nodes


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--n", type=int, nargs="+", default=[4, 5])
    parser.add_argument("--objective", choices=OBJECTIVES, nargs="+", default=list(OBJECTIVES))
    parser.add_argument("--repeat", type=int, default=1)
    args = parser.parse_args(argv)

    backends = available()
    if "cython" not in backends:
        print("compiled backend not built; only the fallback is available", file=sys.stderr)
    names = [b for b in ("cython", "python") if b in backends]
    print(f"{'n':>2} {'objective':<8} {'value':>6} {'nodes':>9} " + " ".join(f"{b + ' s':>10}" for b in names)
          + (f" {'speedup':>8}" if len(names) == 2 else ""))
    for n in args.n:
        for obj in args.objective:
            rows = {b: time_search(n, obj, b, args.repeat) for b in names}
            values = {(v, nodes) for _, v, nodes in rows.values()}
            if len(values) != 1:
                print(f"backend mismatch at n={n} {obj}: {rows}", file=sys.stderr)
                return 1
            _, value, nodes = rows[names[0]]
            line = f"{n:>2} {obj:<8} {value:>6} {nodes:>9} " + " ".join(f"{rows[b][0]:>10.3f}" for b in names)
            if len(names) == 2:
                line += f" {rows['python'][0] / rows['cython'][0]:>7.1f}x"
            print(line, flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
