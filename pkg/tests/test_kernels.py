import random

import numpy as np
import pytest

from gsbc import BACKEND, FullShift, Monoid, builtin_example1, compile_partition, evaluate, example1_window
from gsbc import _kernels_py
from gsbc.config import random_config
from gsbc.cylinder import pattern_rows
from gsbc.generators import random_partition

try:
    from gsbc import _kernels
except ImportError:  # compiled extension not built
    _kernels = None

needs_ext = pytest.mark.skipif(_kernels is None, reason="compiled extension not built")


def test_backend_name():
    assert BACKEND in ("cython", "python")


def tree_args(seed, monoid=Monoid.N):
    rng = random.Random(seed)
    m = compile_partition(random_partition(rng, monoid, 2, 2))
    ball = monoid.ball(2)
    col = {i: k for k, i in enumerate(ball)}
    probe_col = np.asarray([-1 if p is None else col.get(p, -2) for p in m._probe], dtype=np.int64)
    rows = np.asarray(pattern_rows(FullShift().enumerate_words(ball, 3), ball), dtype=np.int64)
    return (probe_col, m.edge_start, m.edge_stop, m.edge_sym, m.edge_child, m.default_child, rows)


@needs_ext
@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("monoid", [Monoid.N, Monoid.Z])
def test_walk_tree_backends_agree(seed, monoid):
    args = tree_args(seed, monoid)
    a = _kernels.walk_tree(*args)
    b = _kernels_py.walk_tree(*args)
    assert a.dtype == b.dtype == np.int64
    assert a.tolist() == b.tolist()


@needs_ext
def test_walk_tree_missing_column():
    args = list(tree_args(0))
    args[0] = np.where(args[0] == 0, -2, args[0]).astype(np.int64)
    assert _kernels.walk_tree(*args).tolist() == _kernels_py.walk_tree(*args).tolist()


@needs_ext
def test_self_index_window_backends_agree():
    rng = np.random.default_rng(0)
    for n in (0, 1, 7, 500):
        v = rng.integers(0, 12, size=n, dtype=np.int64)
        assert _kernels.self_index_window(v).tolist() == _kernels_py.self_index_window(v).tolist()


def test_self_index_window_reference():
    v = np.asarray([2, 0, 5, 1, 3], dtype=np.int64)
    assert _kernels_py.self_index_window(v).tolist() == [5, 0, -1, 3, -1]


def test_example1_window_matches_prober():
    code, _ = builtin_example1()
    rng = random.Random(6)
    for _ in range(100):
        x = random_config(rng, Monoid.N, 20, max_prefix=20)
        assert example1_window(x, 11) == [evaluate(code, x, g) for g in range(11)]
    assert example1_window(x, 0) == []


def test_pure_python_selection(monkeypatch):
    import importlib
    import gsbc.kernels as k
    monkeypatch.setenv("GSBC_PURE_PYTHON", "1")
    try:
        importlib.reload(k)
        assert k.BACKEND == "python" and k.walk_tree is _kernels_py.walk_tree
    finally:
        monkeypatch.delenv("GSBC_PURE_PYTHON")
        importlib.reload(k)
