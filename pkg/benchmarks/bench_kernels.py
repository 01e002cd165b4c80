"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import random
import timeit

import numpy as np

from gsbc import FullShift, Monoid, compile_partition
from gsbc import _kernels_py
from gsbc.cylinder import pattern_rows
from gsbc.generators import random_partition

try:
    from gsbc import _kernels
except ImportError:
    _kernels = None


def tree_case(seed=0, radius=3, max_symbol=3):
    rng = random.Random(seed)
    m = compile_partition(random_partition(rng, Monoid.N, radius, max_symbol, leaf_prob=0.2))
    ball = Monoid.N.ball(radius)
    col = {i: k for k, i in enumerate(ball)}
    probe_col = np.asarray([-1 if p is None else col.get(p, -2) for p in m._probe], dtype=np.int64)
    rows = np.asarray(pattern_rows(FullShift().enumerate_words(ball, max_symbol), ball), dtype=np.int64)
    rows = np.tile(rows, (40, 1))
    return (probe_col, m.edge_start, m.edge_stop, m.edge_sym, m.edge_child, m.default_child, rows), m.n_nodes


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    tree, nodes = tree_case()
    values = np.random.default_rng(0).integers(0, 16, size=1_000_000, dtype=np.int64)
    cases = [
        (f"walk_tree ({len(tree[-1])} rows, {nodes} nodes)", "walk_tree", tree),
        (f"self_index_window ({len(values)} cells)", "self_index_window", (values,)),
    ]
    print(f"{'kernel':<44} {'python [s]':>11} {'cython [s]':>11} {'speedup':>8}")
    for label, name, fn_args in cases:
        py = best_of(lambda: getattr(_kernels_py, name)(*fn_args), args.repeat)
        if _kernels is None:
            print(f"{label:<44} {py:>11.4f} {'n/a':>11} {'n/a':>8}")
            continue
        a = getattr(_kernels, name)(*fn_args)
        assert a.tolist() == getattr(_kernels_py, name)(*fn_args).tolist()
        cy = best_of(lambda: getattr(_kernels, name)(*fn_args), args.repeat)
        print(f"{label:<44} {py:>11.4f} {cy:>11.4f} {py / cy:>7.1f}x")


if __name__ == "__main__":
    main()
