"""Compiled and pure-Python kernels must agree bit for bit."""

import random

import numpy as np
import pytest

from ftlocal import _kernels_py, kernels
from ftlocal.f2core import LinearCode

from conftest import KERNEL_BACKENDS, brute_force_distance, random_code, random_netlist


def test_backend_name():
    assert kernels.BACKEND in ("compiled", "python")


@pytest.mark.parametrize("impl", KERNEL_BACKENDS)
@pytest.mark.parametrize("dataflow", [False, True])
def test_run_netlist_truth_table(impl, dataflow):
    gates = np.array([[1, 0, 1]], dtype=np.int32)
    values = np.array([[1, 0], [0, 0], [1, 0]], dtype=np.uint8)
    erased = np.array([[0, 0], [1, 0], [0, 1]], dtype=np.uint8)
    impl.run_netlist(gates, values, erased, dataflow)
    assert values[0].tolist() == [1, 1]
    assert erased[1].tolist() == [1, 1]
    assert erased[2].tolist() == ([0, 1] if dataflow else [1, 1])


@pytest.mark.parametrize("dataflow", [False, True])
def test_backends_agree_on_random_netlists(dataflow):
    if kernels.BACKEND != "compiled":
        pytest.skip("compiled backend not active")
    rng = random.Random(11)
    nprng = np.random.default_rng(11)
    for _ in range(30):
        nl = random_netlist(rng, rng.randint(2, 20), rng.randint(0, 6))
        values = nprng.integers(0, 2, (50, nl.width), dtype=np.uint8)
        erased = (nprng.random((50, nl.width)) < 0.15).astype(np.uint8)
        v1, e1 = values.copy(), erased.copy()
        v2, e2 = values.copy(), erased.copy()
        _kernels_py.run_netlist(nl.gate_array, v1, e1, dataflow)
        kernels._impl.run_netlist(nl.gate_array, v2, e2, dataflow)
        assert np.array_equal(v1, v2) and np.array_equal(e1, e2)


def _rows(code: LinearCode) -> np.ndarray:
    words = (code.n + 63) // 64
    out = np.zeros((code.k, words), dtype=np.uint64)
    for a, g in enumerate(code.rows):
        for w in range(words):
            out[a, w] = (g >> (64 * w)) & ((1 << 64) - 1)
    return out


@pytest.mark.parametrize("impl", KERNEL_BACKENDS)
def test_min_weight_matches_oracle(impl):
    rng = random.Random(5)
    for _ in range(25):
        n = rng.randint(3, 140)
        code = random_code(rng, n, rng.randint(1, min(n, 8)))
        assert impl.min_weight(_rows(code)) == brute_force_distance(code)


@pytest.mark.parametrize("impl", KERNEL_BACKENDS)
def test_min_weight_empty(impl):
    assert impl.min_weight(np.zeros((0, 1), dtype=np.uint64)) == 0


def test_benchmark_script_runs(capsys):
    if kernels.BACKEND != "compiled":
        pytest.skip("compiled backend not active")
    import runpy
    import pathlib

    script = pathlib.Path(__file__).parents[1] / "benchmarks" / "bench_kernels.py"
    mod = runpy.run_path(str(script))
    assert mod["main"](["--repeat", "1"]) == 0
    assert "speedup" in capsys.readouterr().out
