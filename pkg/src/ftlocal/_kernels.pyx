# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Signatures mirror ``_kernels_py`` exactly."""

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

NOT = 0
CNOT = 1


def run_netlist(const int[:, ::1] gates, unsigned char[:, ::1] values,
                unsigned char[:, ::1] erased, bint dataflow):
    cdef Py_ssize_t b, g
    cdef Py_ssize_t nb = values.shape[0], ng = gates.shape[0]
    cdef int a, t
    cdef unsigned char e
    if erased.shape[0] != nb or erased.shape[1] != values.shape[1]:
        raise ValueError("values and erased must have the same shape")
    with nogil:
        for b in range(nb):
            for g in range(ng):
                a = gates[g, 1]
                if gates[g, 0] == 0:
                    values[b, a] ^= 1
                else:
                    t = gates[g, 2]
                    values[b, t] ^= values[b, a]
                    if dataflow:
                        erased[b, t] |= erased[b, a]
                    else:
                        e = erased[b, a] | erased[b, t]
                        erased[b, a] = e
                        erased[b, t] = e


def min_weight(const unsigned long long[:, ::1] rows):
    cdef Py_ssize_t k = rows.shape[0], words = rows.shape[1]
    cdef Py_ssize_t w, row
    cdef unsigned long long step, total, limit
    cdef long best = -1
    cdef long weight
    if k == 0:
        return 0
    if k > 62:
        raise OverflowError("too many rows for Gray-code enumeration")
    cur = bytearray(words * 8)
    cdef unsigned long long[::1] acc = memoryview(cur).cast("Q")
    limit = (<unsigned long long>1) << k
    with nogil:
        for step in range(1, limit):
            row = __builtin_ctzll(step)
            weight = 0
            for w in range(words):
                acc[w] ^= rows[row, w]
                weight += __builtin_popcountll(acc[w])
            if weight > 0 and (best < 0 or weight < best):
                best = weight
    return best if best > 0 else 0
