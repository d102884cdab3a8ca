"""Compare the compiled kernels with the pure-Python fallback.

Run with ``python benchmarks/bench_kernels.py``. Each case times both
backends on identical inputs, checks that their outputs agree, and prints
the best of ``--repeat`` runs.
"""

from __future__ import annotations

import argparse
import sys
import timeit

import numpy as np

from ftlocal import _kernels_py
from ftlocal.f2core import LinearCode, _rows_as_words
from ftlocal.gadgets import build_doubled, build_encoded_cnot
from ftlocal.locality import certify_locality
from ftlocal.zoo import make_hadamard, make_rm1

try:
    from ftlocal import _kernels as compiled
except ImportError:  # extension not built
    compiled = None


def netlist_case(code, batch):
    cert = certify_locality(code, 3)
    netlist = build_doubled(build_encoded_cnot(code, 0, 1, cert.groups[0]))
    rng = np.random.default_rng(0)
    values = rng.integers(0, 2, (batch, netlist.width), dtype=np.uint8)
    erased = (rng.random((batch, netlist.width)) < 0.05).astype(np.uint8)
    gates = netlist.gate_array

    def make(impl):
        def call():
            v, e = values.copy(), erased.copy()
            impl.run_netlist(gates, v, e, True)
            return v, e
        return call

    label = f"run_netlist {code.name} doubled, batch {batch}"
    return label, make


def min_weight_case(code):
    rows = _rows_as_words(code)

    def make(impl):
        return lambda: impl.min_weight(rows)

    return f"min_weight {code.name} (2^{code.k} codewords)", make


def random_code(n, k, seed):
    import random

    rng = random.Random(seed)
    while True:
        try:
            return LinearCode(n, tuple(rng.getrandbits(n) for _ in range(k)), name=f"random{n}x{k}")
        except ValueError:
            continue


def same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return a == b


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    if compiled is None:
        print("compiled extension not available; build it with "
              "`pip install -e . --no-build-isolation`", file=sys.stderr)
        return 2
    cases = [
        netlist_case(make_hadamard(3), 4096),
        netlist_case(make_rm1(5), 4096),
        netlist_case(make_hadamard(8), 1024),
        netlist_case(make_hadamard(8), 16),
        min_weight_case(make_rm1(5)),
        min_weight_case(make_hadamard(12)),
        min_weight_case(make_rm1(10)),
        min_weight_case(random_code(96, 18, seed=1)),
    ]
    print(f"{'case':<46}{'python s':>11}{'compiled s':>12}{'speedup':>9}")
    for label, make in cases:
        py, cy = make(_kernels_py), make(compiled)
        if not same(py(), cy()):
            print(f"{label}: backends disagree", file=sys.stderr)
            return 1
        t_py = min(timeit.repeat(py, number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(cy, number=1, repeat=args.repeat))
        print(f"{label:<46}{t_py:>11.4f}{t_cy:>12.5f}{t_py / t_cy:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
