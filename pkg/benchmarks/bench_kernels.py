#!/usr/bin/env python3
"""Time the compiled kernels against the pure-Python fallback.

Each case runs every available backend on the same seeded random graphs and
checks that the answers agree before reporting timings.

    python3 benchmarks/bench_kernels.py            # default cases
    python3 benchmarks/bench_kernels.py --quick    # smaller graphs
    python3 benchmarks/bench_kernels.py --json out.json
"""

from __future__ import annotations

import argparse
import json
import platform
import statistics
import time

from twsep.generators import random_gnm
from twsep.kernels import backends

# (kernel, n, m) per case; sn is far more expensive so it gets smaller graphs
CASES = [
    ("tw_order", 16, 32),
    ("tw_order", 18, 36),
    ("cutwidth_order", 16, 30),
    ("vsn_order", 16, 30),
    ("sumcut_order", 16, 30),
    ("cutsize_search", 20, 40),
    ("bsep_search", 16, 32),
    ("sn_search", 11, 22),
]
QUICK = [(k, max(6, n - 4), max(8, m - 8)) for k, n, m in CASES]


def time_call(fn, adj, repeat):
    samples = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(adj)
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples), result


def run(cases, graphs_per_case, repeat, seed):
    mods = backends()
    rows = []
    for kernel, n, m in cases:
        times = {name: [] for name in mods}
        for i in range(graphs_per_case):
            adj = list(random_gnm(n, m, seed=seed + i).adj)
            results = {}
            for name, mod in mods.items():
                t, results[name] = time_call(getattr(mod, kernel), adj, repeat)
                times[name].append(t)
            if len(set(map(repr, results.values()))) != 1:
                raise SystemExit(f"backends disagree on {kernel} n={n} seed={seed + i}: {results}")
        row = {"kernel": kernel, "n": n, "m": m}
        row.update({f"{name}_s": sum(ts) / len(ts) for name, ts in times.items()})
        if "cython" in mods:
            row["speedup"] = row["python_s"] / max(row["cython_s"], 1e-9)
        rows.append(row)
        print(_format(row), flush=True)
    return rows


def _format(row):
    parts = [f"{row['kernel']:<15} n={row['n']:<3} m={row['m']:<3}", f"python {row['python_s']:9.4f}s"]
    if "cython_s" in row:
        parts += [f"cython {row['cython_s']:9.5f}s", f"x{row['speedup']:.0f}"]
    return "  ".join(parts)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--quick", action="store_true")
    p.add_argument("--graphs", type=int, default=3, help="random graphs per case")
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--json", default=None, help="write results to this file")
    args = p.parse_args(argv)
    if "cython" not in backends():
        print("compiled extension not available; timing the Python backend only")
    rows = run(QUICK if args.quick else CASES, args.graphs, args.repeat, args.seed)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"python": platform.python_version(), "machine": platform.machine(), "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
