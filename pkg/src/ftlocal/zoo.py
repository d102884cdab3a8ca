"""Built-in code families used as fixtures and for the rate-bound audit."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .f2core import LinearCode


def make_repetition(n: int) -> LinearCode:
    """[n, 1, n]."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return LinearCode(n, ((1 << n) - 1,), d=n, name=f"rep{n}")


def _point_bit(index: int, coord: int, m: int) -> int:
    # points x of F2^m in lexicographic order: x_1 is the most significant bit
    return index >> (m - 1 - coord) & 1


def _linear_rows(m: int) -> tuple[int, ...]:
    rows = []
    for coord in range(m):
        row = 0
        for x in range(1 << m):
            if _point_bit(x, coord, m):
                row |= 1 << x
        rows.append(row)
    return tuple(rows)


def make_hadamard(k: int) -> LinearCode:
    """[2^k, k, 2^(k-1)]; row i evaluates x -> x_i on all of F2^k."""
    if not 2 <= k <= 12:
        raise ValueError("Hadamard codes are built for 2 ≤ k ≤ 12")
    return LinearCode(1 << k, _linear_rows(k), d=1 << (k - 1), name=f"hadamard{k}")


def make_rm1(m: int) -> LinearCode:
    """First-order Reed–Muller RM(1, m): [2^m, m+1, 2^(m-1)].

    The Hadamard rows come first and the all-ones row is last.
    """
    if not 2 <= m <= 12:
        raise ValueError("RM(1, m) is built for 2 ≤ m ≤ 12")
    rows = _linear_rows(m) + (((1 << (1 << m)) - 1),)
    return LinearCode(1 << m, rows, d=1 << (m - 1), name=f"rm1_{m}")


def make_block_repetition(block: int, blocks: int) -> LinearCode:
    """Direct sum of ``blocks`` repetition codes of length ``block``."""
    if block < 1 or blocks < 1:
        raise ValueError("block length and block count must be positive")
    ones = (1 << block) - 1
    rows = tuple(ones << (a * block) for a in range(blocks))
    return LinearCode(block * blocks, rows, d=block, name=f"blockrep{block}x{blocks}")


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: range
    build: Callable[[int], LinearCode]
    n: Callable[[int], int]
    k: Callable[[int], int]
    d: Callable[[int], int]
    q: Optional[Callable[[int], int]] = None
    r: Optional[Callable[[int], int]] = None
    note: str = ""

    def members(self, params: Optional[range] = None) -> Iterator[LinearCode]:
        for p in params if params is not None else self.params:
            yield self.build(p)


FAMILIES: dict[str, FamilySpec] = {
    "repetition": FamilySpec(
        "repetition", range(1, 65), make_repetition,
        n=lambda p: p, k=lambda p: 1, d=lambda p: p, q=lambda p: 1, r=lambda p: p,
        note="parameter is n"),
    "hadamard": FamilySpec(
        "hadamard", range(2, 13), make_hadamard,
        n=lambda p: 1 << p, k=lambda p: p, d=lambda p: 1 << (p - 1),
        q=lambda p: 2, r=lambda p: 1 << (p - 1), note="parameter is k"),
    "rm1": FamilySpec(
        "rm1", range(2, 13), make_rm1,
        n=lambda p: 1 << p, k=lambda p: p + 1, d=lambda p: 1 << (p - 1),
        note="parameter is m; locality is read off the generic search"),
    "blockrep": FamilySpec(
        "blockrep", range(1, 17), lambda p: make_block_repetition(3, p),
        n=lambda p: 3 * p, k=lambda p: p, d=lambda p: 3, q=lambda p: 1, r=lambda p: 3,
        note="parameter is the number of length-3 blocks"),
}


def get_family(name: str) -> FamilySpec:
    try:
        return FAMILIES[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None


def small_zoo(max_k: int = 5) -> list[LinearCode]:
    """Representative members with k ≤ ``max_k`` used across the test-suite."""
    codes = [make_repetition(3), make_repetition(5)]
    codes += [make_hadamard(k) for k in range(2, max_k + 1)]
    codes += [make_rm1(m) for m in range(2, max_k)]
    codes += [make_block_repetition(3, b) for b in range(2, max_k + 1)]
    return codes
