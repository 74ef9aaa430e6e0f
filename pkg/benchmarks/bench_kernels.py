#!/usr/bin/env python3
"""Compare the compiled kernels against their pure-Python twins.

Each hot kernel is timed on the same inputs in both modes.  The compiled
mode is whatever the package selected at import (numba unless WTAP_NUMBA=0,
in which case both columns run the same uncompiled code).

Usage:
    python3 benchmarks/bench_kernels.py [--n 2000] [--links 3000] [--repeat 3]
"""

import argparse
import time

import numpy as np

import wtap
from wtap import _kernels
from wtap.backend import backend_name
from wtap.model import vertical_cost_table


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_vertical_table(inst, repeat):
    idx = inst.index
    n = inst.n
    anc_off = np.zeros(n + 1, np.int64)
    np.cumsum(idx.depth, out=anc_off[1:])
    m = len(inst.links)
    la = np.fromiter((lk.u for lk in inst.links), np.int64, m)
    lb = np.fromiter((lk.v for lk in inst.links), np.int64, m)
    lapex = np.fromiter((wtap.apex(inst, lk) for lk in inst.links), np.int64, m)
    lw = np.fromiter((lk.weight for lk in inst.links), np.int64, m)
    lid = np.fromiter((lk.id for lk in inst.links), np.int64, m)
    total = int(anc_off[n])

    def run(fn):
        cost = np.full(total, _kernels.INF, np.int64)
        best = np.full(total, -1, np.int64)
        fn(la, lb, lapex, lw, lid, idx.parent, idx.depth, anc_off, cost, best)

    run(_kernels.fill_vertical_table)  # warm the jit cache
    fast = timeit(lambda: run(_kernels.fill_vertical_table), repeat)
    slow = timeit(lambda: run(_kernels.fill_vertical_table_py), repeat)
    return fast, slow


def bench_baseline_dp(inst, repeat):
    table = vertical_cost_table(inst)
    idx = inst.index
    n = inst.n
    anc_off = table.anc_off
    order = np.array([v for v in idx.bfs_order[::-1] if v != inst.root], np.int64)
    kids_off = np.zeros(n + 1, np.int64)
    for v in range(n):
        kids_off[v + 1] = kids_off[v] + len(idx.children[v])
    kids = np.zeros(max(1, int(kids_off[n])), np.int64)
    for v in range(n):
        for j, c in enumerate(idx.children[v]):
            kids[kids_off[v] + j] = c
    total = int(anc_off[n])

    def run(fn):
        h = np.full(total, _kernels.INF, np.int64)
        bp = np.full(total, -2, np.int64)
        fn(order, kids_off, kids, idx.depth, anc_off, table.cost, h, bp)

    run(_kernels.fill_baseline_dp)
    fast = timeit(lambda: run(_kernels.fill_baseline_dp), repeat)
    slow = timeit(lambda: run(_kernels.fill_baseline_dp_py), repeat)
    return fast, slow


def bench_min_cover(repeat):
    inst = wtap.gen_random(n=16, link_count=20, weight_max=50, seed=7)
    masks = np.array(inst.link_paths, np.int64)
    weights = np.array([lk.weight for lk in inst.links], np.int64)
    n_edges = inst.n - 1
    _kernels.min_cover_gray(masks, weights, n_edges)
    fast = timeit(lambda: _kernels.min_cover_gray(masks, weights, n_edges), repeat)
    slow = timeit(lambda: _kernels.min_cover_gray_py(masks, weights, n_edges), repeat)
    return fast, slow


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=2000)
    parser.add_argument("--links", type=int, default=3000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    inst = wtap.gen_random(n=args.n, link_count=args.links, weight_max=100,
                           seed=1)
    print(f"backend: {backend_name()}  (set WTAP_NUMBA=0 to force pure Python)")
    print(f"instance: n={inst.n}, links={len(inst.links)}")
    rows = [
        ("vertical cost table", *bench_vertical_table(inst, args.repeat)),
        ("baseline path DP", *bench_baseline_dp(inst, args.repeat)),
        (f"min-cover enumeration (2^{20})", *bench_min_cover(args.repeat)),
    ]
    print(f"{'kernel':<32}{'compiled':>12}{'pure':>12}{'speedup':>10}")
    for name, fast, slow in rows:
        print(f"{name:<32}{fast * 1e3:>10.1f}ms{slow * 1e3:>10.1f}ms"
              f"{slow / fast:>9.1f}x")


if __name__ == "__main__":
    main()
