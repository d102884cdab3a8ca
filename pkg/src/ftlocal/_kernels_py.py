"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``.

Both modules expose the same functions with the same argument conventions:

``gates``
    int32 array of shape (G, 3); row ``(kind, a, b)`` with kind 0 = NOT on
    wire ``a`` and kind 1 = CNOT with control ``a`` and target ``b``. Gates
    are listed layer by layer; inside a layer the order is irrelevant because
    no wire is shared.
``values``, ``erased``
    uint8 arrays of shape (B, W), updated in place.
"""

from __future__ import annotations

import numpy as np

NOT = 0
CNOT = 1


def run_netlist(gates, values, erased, dataflow: bool) -> None:
    if erased.shape != values.shape:
        raise ValueError("values and erased must have the same shape")
    for kind, a, t in np.asarray(gates).tolist():
        if kind == NOT:
            values[:, a] ^= 1
            continue
        values[:, t] ^= values[:, a]
        if dataflow:
            erased[:, t] |= erased[:, a]
        else:
            both = erased[:, a] | erased[:, t]
            erased[:, a] = both
            erased[:, t] = both


def min_weight(rows) -> int:
    """Smallest nonzero weight in the span of ``rows`` (uint64 words per row).

    Walks the span in Gray-code order so each step is one row XOR.
    """
    rows = np.asarray(rows, dtype=np.uint64)
    k = rows.shape[0]
    if k == 0:
        return 0
    ints = [int.from_bytes(r.tobytes(), "little") for r in rows]
    acc = 0
    best = 0
    for step in range(1, 1 << k):
        acc ^= ints[(step & -step).bit_length() - 1]
        weight = acc.bit_count()
        if weight and (best == 0 or weight < best):
            best = weight
    return best
