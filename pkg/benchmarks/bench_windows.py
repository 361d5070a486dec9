"""Compare the compiled and pure-Python window kernels.

    python benchmarks/bench_windows.py [--orderings 5000] [--repeat 20]

Workloads:
  search  first N rotation-inequivalent orderings of the (3,5) dual example, k=3
          (early-exit scans, the shape of the dual search)
  full    complete k=2 scans of the (2,7) default cycle (2667 windows each)
"""

from __future__ import annotations

import argparse
import time
from itertools import islice, permutations

from grasscycle import windows
from grasscycle.cycle import default_representatives
from grasscycle.field import make_field
from grasscycle.orbits import orbit_partition

REMARK_35 = (1, 54, 82, 18, 2, 3, 9, 162, 6, 27)


def bench_search(backend: str, count: int) -> tuple[float, int]:
    ctx = make_field(3, 5, [1, 2, 0, 0, 0, 1])
    codes = windows.as_int64(ctx.exp_table)
    ms = sorted(REMARK_35)
    hits = 0
    t0 = time.perf_counter()
    for p in islice(permutations(ms[1:]), count):
        if windows.first_window_failure(codes, (ms[0],) + p, ctx.group_order, 1210, 3, 5, 3, backend) < 0:
            hits += 1
    return time.perf_counter() - t0, hits


def bench_full(backend: str, repeat: int) -> tuple[float, int]:
    ctx = make_field(2, 7, [1, 1, 0, 0, 0, 0, 0, 1])
    reps = default_representatives(orbit_partition(ctx)).rep_exponents
    codes = windows.as_int64(ctx.exp_table)
    L = len(reps) * ctx.gamma_order
    t0 = time.perf_counter()
    for _ in range(repeat):
        res = windows.first_window_failure(codes, reps, ctx.group_order, L, 2, 7, 2, backend)
    return time.perf_counter() - t0, res


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--orderings", type=int, default=5000)
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()

    backends = ["python"] + (["cython"] if windows._compiled is not None else [])
    if len(backends) == 1:
        print("compiled kernel not built; run `python setup.py build_ext --inplace`")
    rows = []
    for name, fn, arg in (("search", bench_search, args.orderings), ("full", bench_full, args.repeat)):
        times = {}
        for b in backends:
            times[b], check = fn(b, arg)
            rows.append((name, b, times[b], check))
        if len(times) == 2:
            rows.append((name, "speedup", times["python"] / times["cython"], None))
    print(f"{'workload':<8} {'backend':<8} {'seconds':>10}  check")
    for name, b, t, check in rows:
        val = f"{t:10.3f}" if b != "speedup" else f"{t:9.1f}x"
        print(f"{name:<8} {b:<8} {val}  {'' if check is None else check}")


if __name__ == "__main__":
    main()
