"""Linear algebra over F2, linear codes and the ideal erasure decoder.

Vectors are stored as Python ints used as bitsets: bit ``t`` holds
coordinate ``t`` (0-based). All indices in this package's Python API are
0-based; the text and JSON formats in :mod:`ftlocal.io` are 1-based.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from . import kernels
from .errors import CapacityError, CorruptionError, DimensionError

DISTANCE_CAP = 20
SPOT_CHECK_SAMPLES = 100_000


def _mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector over F2."""

    value: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise DimensionError("length must be non-negative")
        if self.value < 0 or self.value >> self.length:
            raise DimensionError(f"value does not fit in {self.length} bits")

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(0, n)

    @classmethod
    def unit(cls, n: int, index: int) -> "BitVector":
        if not 0 <= index < n:
            raise IndexError(f"index {index} out of range for length {n}")
        return cls(1 << index, n)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        value = 0
        length = 0
        for t, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"not a bit: {b!r}")
            value |= b << t
            length = t + 1
        return cls(value, length)

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        s = s.strip()
        if any(ch not in "01" for ch in s):
            raise ValueError("bit strings may only contain '0' and '1'")
        return cls.from_bits(int(ch) for ch in s)

    @classmethod
    def from_support(cls, n: int, indices: Iterable[int]) -> "BitVector":
        value = 0
        for t in indices:
            if not 0 <= t < n:
                raise IndexError(f"index {t} out of range for length {n}")
            value |= 1 << t
        return cls(value, n)

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(t for t in range(self.length) if self.value >> t & 1)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(self.value >> t & 1 for t in range(self.length))

    def __len__(self) -> int:
        return self.length

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self.length:
            raise IndexError(index)
        return self.value >> index & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if other.length != self.length:
            raise DimensionError("length mismatch")
        return BitVector(self.value ^ other.value, self.length)

    __add__ = __xor__

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


def inner_product(u: BitVector, w: BitVector) -> int:
    if u.length != w.length:
        raise DimensionError(f"lengths differ: {u.length} != {w.length}")
    return (u.value & w.value).bit_count() & 1


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank of int-bitset rows over F2."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            low = row & -row
            if low in pivots:
                row ^= pivots[low]
            else:
                pivots[low] = row
                break
    return len(pivots)


@dataclass(frozen=True)
class LinearCode:
    """Binary linear code given by its privileged basis ``g_0 .. g_{k-1}``.

    ``d`` is ``None`` until computed or declared.
    """

    n: int
    rows: tuple[int, ...]
    d: Optional[int] = None
    name: str = ""
    k: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        object.__setattr__(self, "k", len(self.rows))
        if self.n < 1:
            raise DimensionError("block length must be positive")
        for r in self.rows:
            if r <= 0:
                raise ValueError("generator rows must be nonzero")
            if r >> self.n:
                raise DimensionError(f"generator row wider than n={self.n}")
        if gf2_rank(self.rows) != self.k:
            raise ValueError("generator rows are linearly dependent")
        if self.d is not None and self.d < 1:
            raise ValueError("distance must be positive")

    @classmethod
    def from_generator(cls, generator: Sequence[BitVector | str | Sequence[int]],
                       d: Optional[int] = None, name: str = "") -> "LinearCode":
        vecs = []
        for g in generator:
            if isinstance(g, str):
                g = BitVector.from_string(g)
            elif not isinstance(g, BitVector):
                g = BitVector.from_bits(g)
            vecs.append(g)
        if not vecs:
            raise ValueError("a code needs at least one generator row")
        n = vecs[0].length
        if any(v.length != n for v in vecs):
            raise DimensionError("generator rows have different lengths")
        return cls(n, tuple(v.value for v in vecs), d=d, name=name)

    @property
    def generator(self) -> tuple[BitVector, ...]:
        return tuple(BitVector(r, self.n) for r in self.rows)

    def row(self, i: int) -> BitVector:
        return BitVector(self.rows[i], self.n)

    @cached_property
    def columns(self) -> tuple[int, ...]:
        """Column ``c`` of the generator as a k-bit int (bit ``i`` = g_i[c])."""
        cols = [0] * self.n
        for i, r in enumerate(self.rows):
            for c in range(self.n):
                if r >> c & 1:
                    cols[c] |= 1 << i
        return tuple(cols)

    def with_distance(self, d: int) -> "LinearCode":
        return replace(self, d=d)

    def encode_int(self, m: int) -> int:
        out = 0
        i = 0
        while m:
            if m & 1:
                out ^= self.rows[i]
            m >>= 1
            i += 1
        return out

    def encode(self, m: BitVector) -> BitVector:
        return encode(self, m)

    def __str__(self) -> str:
        d = "?" if self.d is None else self.d
        label = f"{self.name} " if self.name else ""
        return f"{label}[{self.n},{self.k},{d}]"


def encode(code: LinearCode, m: BitVector) -> BitVector:
    if m.length != code.k:
        raise DimensionError(f"message has length {m.length}, code has k={code.k}")
    return BitVector(code.encode_int(m.value), code.n)


def _rows_as_words(code: LinearCode) -> np.ndarray:
    words = (code.n + 63) // 64
    out = np.zeros((code.k, words), dtype=np.uint64)
    for i, r in enumerate(code.rows):
        out[i] = np.frombuffer(r.to_bytes(words * 8, "little"), dtype=np.uint64)
    return out


def distance_bruteforce(code: LinearCode, cap: int = DISTANCE_CAP) -> int:
    """Exact minimum distance by enumerating all 2^k - 1 nonzero codewords."""
    if code.k > cap:
        raise CapacityError(
            f"k={code.k} exceeds the brute-force cap {cap}; declare d instead")
    return int(kernels.min_weight(_rows_as_words(code)))


def with_bruteforce_distance(code: LinearCode, cap: int = DISTANCE_CAP) -> LinearCode:
    return code.with_distance(distance_bruteforce(code, cap))


def spot_check_distance(code: LinearCode, samples: int = SPOT_CHECK_SAMPLES,
                        seed: int = 0) -> Optional[BitVector]:
    """Sample random nonzero codewords; return one lighter than ``code.d``.

    Returns ``None`` when no sample undercuts the declared distance.
    """
    if code.d is None:
        raise ValueError("code has no declared distance")
    rng = np.random.default_rng(seed)
    gen = np.array([BitVector(r, code.n).bits for r in code.rows], dtype=np.uint8)
    chunk = max(1, min(samples, 2_000_000 // max(code.n, 1)))
    done = 0
    while done < samples:
        size = min(chunk, samples - done)
        msgs = rng.integers(0, 2, size=(size, code.k), dtype=np.uint8)
        words = (msgs.astype(np.int64) @ gen) & 1
        weights = words.sum(axis=1)
        bad = np.nonzero((weights > 0) & (weights < code.d))[0]
        if bad.size:
            return BitVector.from_bits(int(b) for b in words[bad[0]])
        done += size
    return None


@dataclass(frozen=True)
class ErasureWord:
    """Word over {0, 1, ⊥}; ``erased`` is the bitset of ⊥ positions."""

    bits: int
    erased: int
    length: int

    def __post_init__(self):
        full = _mask(self.length)
        if self.bits & ~full or self.erased & ~full:
            raise DimensionError(f"word does not fit in {self.length} positions")
        # erased positions carry no value
        object.__setattr__(self, "bits", self.bits & ~self.erased)

    @classmethod
    def from_string(cls, s: str) -> "ErasureWord":
        s = s.strip()
        bits = erased = 0
        for t, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << t
            elif ch == "?":
                erased |= 1 << t
            elif ch != "0":
                raise ValueError(f"unexpected symbol {ch!r}; use 0, 1 or ?")
        return cls(bits, erased, len(s))

    @classmethod
    def from_symbols(cls, symbols: Iterable[Optional[int]]) -> "ErasureWord":
        bits = erased = 0
        length = 0
        for t, s in enumerate(symbols):
            if s is None:
                erased |= 1 << t
            elif s == 1:
                bits |= 1 << t
            elif s != 0:
                raise ValueError(f"not a symbol: {s!r}")
            length = t + 1
        return cls(bits, erased, length)

    @classmethod
    def clean(cls, word: BitVector) -> "ErasureWord":
        return cls(word.value, 0, word.length)

    @property
    def erased_set(self) -> frozenset[int]:
        return frozenset(t for t in range(self.length) if self.erased >> t & 1)

    @property
    def symbols(self) -> tuple[Optional[int], ...]:
        return tuple(None if self.erased >> t & 1 else self.bits >> t & 1
                     for t in range(self.length))

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return "".join("?" if s is None else str(s) for s in self.symbols)


def index_mask(indices: Iterable[int], n: int) -> int:
    mask = 0
    for t in indices:
        if not 0 <= t < n:
            raise IndexError(f"index {t} out of range for length {n}")
        mask |= 1 << t
    return mask


def erase(word: BitVector, indices: Iterable[int]) -> ErasureWord:
    return ErasureWord(word.value, index_mask(indices, word.length), word.length)


class NotDecodable:
    """Marker returned when several messages complete an erased word."""

    _instance: Optional["NotDecodable"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "NOT_DECODABLE"


NOT_DECODABLE = NotDecodable()


@lru_cache(maxsize=4096)
def _decoding_plan(code: LinearCode, erased: int) -> tuple[int, tuple[tuple[int, int], ...], tuple[int, ...]]:
    """Elimination on the known columns, pivot at the lowest message index first.

    Returns the rank, one ``(message bit, coordinate mask)`` reader per pivot,
    and the coordinate masks of the parity checks among known positions.
    """
    cols = code.columns
    basis: dict[int, tuple[int, int]] = {}  # pivot bit -> (row, coordinates)
    checks = []
    for c in range(code.n):
        if erased >> c & 1:
            continue
        row, coords = cols[c], 1 << c
        for p, (brow, bcoords) in basis.items():
            if row & p:
                row ^= brow
                coords ^= bcoords
        if not row:
            checks.append(coords)
            continue
        p = row & -row
        for q, (brow, bcoords) in list(basis.items()):
            if brow & p:
                basis[q] = (brow ^ row, bcoords ^ coords)
        basis[p] = (row, coords)
    readers = tuple((p, coords) for p, (_, coords) in basis.items())
    return len(basis), readers, tuple(checks)


def ideal_decode(code: LinearCode, w: ErasureWord) -> BitVector | NotDecodable:
    """Recover the message from the non-erased positions of ``w``.

    Solves ``m · column_c = w_c`` for every known position ``c`` by Gaussian
    elimination. Raises :class:`CorruptionError` if the known positions
    violate a parity check, which erasures alone cannot cause.
    """
    if w.length != code.n:
        raise DimensionError(f"word has length {w.length}, code has n={code.n}")
    rank, readers, checks = _decoding_plan(code, w.erased)
    for coords in checks:
        if (w.bits & coords).bit_count() & 1:
            raise CorruptionError("known positions are not consistent with any codeword")
    if rank < code.k:
        return NOT_DECODABLE
    m = 0
    for p, coords in readers:
        if (w.bits & coords).bit_count() & 1:
            m |= p
    return BitVector(m, code.k)


def is_decodable(code: LinearCode, erased: int) -> bool:
    """True iff no nonzero codeword is supported inside the erased bitset."""
    known = [col for c, col in enumerate(code.columns) if not erased >> c & 1]
    return gf2_rank(known) == code.k


def random_subset(rng: random.Random, n: int, size: int) -> tuple[int, ...]:
    return tuple(sorted(rng.sample(range(n), size)))
