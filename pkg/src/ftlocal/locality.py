"""Repair vectors, disjoint repair groups and (q, r)-locality certificates.

A repair vector for message index ``i`` is a word ``u`` with
``<u, g_t> = [t == i]`` for every basis row, so that ``<u, C(m)> = m_i`` for
all messages. A code is (q, r)-local when every index has ``r``
support-disjoint repair vectors of weight at most ``q``.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Optional, Sequence

from .errors import CapacityError, LocalityContradiction
from .f2core import BitVector, LinearCode, gf2_rank

if TYPE_CHECKING:
    from .circuit import GateNetlist

REGION_CAP = 24
SMALL_QUERY = 3
AFFINE_ENUM_LIMIT = 1 << 22


@dataclass(frozen=True)
class RepairVector:
    i: int
    u: BitVector

    @property
    def weight(self) -> int:
        return self.u.weight

    @property
    def support(self) -> tuple[int, ...]:
        return self.u.support

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.weight, self.support)


def verify_repair_vector(code: LinearCode, i: int, u: BitVector) -> bool:
    if u.length != code.n or not 0 <= i < code.k:
        return False
    return all(((u.value & g).bit_count() & 1) == (t == i)
               for t, g in enumerate(code.rows))


@dataclass(frozen=True)
class RepairGroupSet:
    i: int
    groups: tuple[RepairVector, ...]

    @property
    def q(self) -> int:
        return max((g.weight for g in self.groups), default=0)

    @property
    def r(self) -> int:
        return len(self.groups)

    @property
    def covered(self) -> int:
        """Bitset of all coordinates touched by some group."""
        out = 0
        for g in self.groups:
            out |= g.u.value
        return out

    def problems(self, code: LinearCode, q: Optional[int] = None) -> list[str]:
        """Violations of the three locality properties (empty when valid)."""
        out = []
        bound = self.q if q is None else q
        used = 0
        for a, g in enumerate(self.groups):
            if g.i != self.i:
                out.append(f"group {a} is for index {g.i}, not {self.i}")
            if g.weight > bound:
                out.append(f"group {a} has weight {g.weight} > {bound}")
            if used & g.u.value:
                out.append(f"group {a} overlaps an earlier group")
            used |= g.u.value
            if not verify_repair_vector(code, self.i, g.u):
                out.append(f"group {a} does not read m_{self.i}")
        return out

    def is_valid(self, code: LinearCode, q: Optional[int] = None) -> bool:
        return not self.problems(code, q)


def _pair_cost(region_size: int, max_weight: int) -> int:
    return sum(math.comb(region_size, w - 1) for w in range(1, max_weight + 1))


def _by_combination(cols: Sequence[int], region: Sequence[int], target: int,
                    max_weight: int) -> list[int]:
    # choose w-1 coordinates, look up the last one by its column signature
    last: dict[int, list[int]] = {}
    for pos, c in enumerate(region):
        last.setdefault(cols[c], []).append(pos)
    found = []
    for w in range(1, max_weight + 1):
        for combo in itertools.combinations(range(len(region)), w - 1):
            acc = target
            for pos in combo:
                acc ^= cols[region[pos]]
            floor = combo[-1] if combo else -1
            for pos in last.get(acc, ()):
                if pos > floor:
                    mask = 1 << region[pos]
                    for p in combo:
                        mask |= 1 << region[p]
                    found.append(mask)
    return found


def _by_affine_space(cols: Sequence[int], region: Sequence[int], target: int,
                     max_weight: int) -> list[int]:
    # solutions = particular + span(kernel); enumerate the span in Gray order
    pivots: dict[int, tuple[int, int]] = {}  # pivot bit -> (column combo, coords)
    kernel = []
    for c in region:
        sig, coords = cols[c], 1 << c
        for p, (psig, pcoords) in pivots.items():
            if sig & p:
                sig ^= psig
                coords ^= pcoords
        if sig:
            p = sig & -sig
            for q, (qsig, qcoords) in list(pivots.items()):
                if qsig & p:
                    pivots[q] = (qsig ^ sig, qcoords ^ coords)
            pivots[p] = (sig, coords)
        else:
            kernel.append(coords)
    particular = 0
    rest = target
    for p, (psig, pcoords) in pivots.items():
        if rest & p:
            rest ^= psig
            particular ^= pcoords
    if rest:
        return []
    found = []
    acc = particular
    if acc.bit_count() <= max_weight:
        found.append(acc)
    for step in range(1, 1 << len(kernel)):
        acc ^= kernel[(step & -step).bit_length() - 1]
        if acc.bit_count() <= max_weight:
            found.append(acc)
    return found


def enumerate_repair_vectors(code: LinearCode, i: int, max_weight: int,
                             region: Optional[Iterable[int]] = None) -> list[RepairVector]:
    """All repair vectors for ``i`` of weight ≤ ``max_weight`` inside ``region``.

    Sorted by weight, then by support. Either strategy below is exhaustive;
    the cheaper one is picked from the region size and the rank of the
    region's columns.
    """
    if not 0 <= i < code.k:
        raise IndexError(f"message index {i} out of range for k={code.k}")
    region = sorted(set(range(code.n) if region is None else region))
    if any(not 0 <= c < code.n for c in region):
        raise IndexError("search region leaves the block")
    if len(region) > REGION_CAP and max_weight > SMALL_QUERY:
        raise CapacityError(
            f"region of {len(region)} coordinates with q={max_weight} is above the cap "
            f"(region ≤ {REGION_CAP} or q ≤ {SMALL_QUERY})")
    max_weight = min(max_weight, len(region))
    if max_weight <= 0:
        return []
    cols = code.columns
    target = 1 << i
    nullity = len(region) - gf2_rank([cols[c] for c in region])
    if (1 << nullity) < _pair_cost(len(region), max_weight) and (1 << nullity) <= AFFINE_ENUM_LIMIT:
        masks = _by_affine_space(cols, region, target, max_weight)
    else:
        masks = _by_combination(cols, region, target, max_weight)
    vectors = [RepairVector(i, BitVector(m, code.n)) for m in set(masks)]
    vectors.sort(key=RepairVector.sort_key)
    return vectors


def extract_disjoint_groups(candidates: Sequence[RepairVector],
                            i: Optional[int] = None) -> RepairGroupSet:
    """Greedy maximal matching on the hypergraph of candidate supports.

    Candidates are taken by ascending weight, ties broken by support; a
    candidate is kept when it shares no coordinate with those already kept.
    """
    if i is None:
        if not candidates:
            raise ValueError("index required for an empty candidate list")
        i = candidates[0].i
    if any(c.i != i for c in candidates):
        raise ValueError("candidates are for different message indices")
    used = 0
    chosen = []
    seen = set()
    for cand in sorted(candidates, key=RepairVector.sort_key):
        if cand.u.value in seen:
            continue
        seen.add(cand.u.value)
        if cand.u.value & used:
            continue
        chosen.append(cand)
        used |= cand.u.value
    return RepairGroupSet(i, tuple(chosen))


def is_maximal(matching: RepairGroupSet, candidates: Sequence[RepairVector]) -> bool:
    covered = matching.covered
    chosen = {g.u.value for g in matching.groups}
    return all(c.u.value in chosen or c.u.value & covered for c in candidates)


def exact_maximum_matching(candidates: Sequence[RepairVector]) -> list[RepairVector]:
    """Largest support-disjoint subfamily, by branch and bound. Tiny inputs only."""
    cands = sorted({c.u.value: c for c in candidates}.values(), key=RepairVector.sort_key)
    if len(cands) > 40:
        raise CapacityError("exact matching is exponential; at most 40 candidates")
    best: list[RepairVector] = []

    def search(start: int, used: int, picked: list[RepairVector]) -> None:
        nonlocal best
        if len(picked) > len(best):
            best = list(picked)
        if len(picked) + (len(cands) - start) <= len(best):
            return
        for t in range(start, len(cands)):
            c = cands[t]
            if c.u.value & used:
                continue
            picked.append(c)
            search(t + 1, used | c.u.value, picked)
            picked.pop()

    search(0, 0, [])
    return best


@dataclass(frozen=True)
class LocalityCertificate:
    n: int
    k: int
    groups: tuple[RepairGroupSet, ...]
    code_name: str = ""

    @property
    def q(self) -> int:
        return max((g.q for g in self.groups), default=0)

    @property
    def r(self) -> int:
        return min((g.r for g in self.groups), default=0)

    @property
    def bound_ratio(self) -> float:
        """k · r^(1/q) / n."""
        if self.q == 0:
            return 0.0
        return self.k * self.r ** (1 / self.q) / self.n

    def for_index(self, i: int) -> RepairGroupSet:
        return self.groups[i]

    def problems(self, code: LinearCode) -> list[str]:
        out = []
        if (code.n, code.k) != (self.n, self.k):
            out.append("certificate was issued for a different code shape")
            return out
        if len(self.groups) != self.k or [g.i for g in self.groups] != list(range(self.k)):
            out.append("certificate must list every message index once, in order")
            return out
        for g in self.groups:
            out.extend(f"index {g.i}: {p}" for p in g.problems(code, self.q))
        return out

    def verify(self, code: LinearCode) -> bool:
        return not self.problems(code)


def certify_locality(code: LinearCode, max_weight: int) -> LocalityCertificate:
    """Search each index over the whole block and keep a greedy matching."""
    groups = tuple(
        extract_disjoint_groups(enumerate_repair_vectors(code, i, max_weight), i)
        for i in range(code.k))
    return LocalityCertificate(code.n, code.k, groups, code.name)


@dataclass(frozen=True)
class WeightOneScreen:
    flagged: tuple[int, ...]
    kd: int
    n: int
    c: float

    @property
    def kd_over_n(self) -> Fraction:
        return Fraction(self.kd, self.n)

    @property
    def premise_holds(self) -> bool:
        """Finite stand-in for kd = ω(n): k·d > c·n. Reported, not enforced."""
        return self.kd > self.c * self.n


def screen_weight_one(cert: LocalityCertificate, code: LinearCode,
                      c: float = 1.0) -> WeightOneScreen:
    """Flag indices whose every repair vector is a single coordinate."""
    if code.d is None:
        raise ValueError("screening needs the code distance")
    flagged = tuple(g.i for g in cert.groups if g.groups and g.q == 1)
    return WeightOneScreen(flagged, code.k * code.d, code.n, c)


@dataclass(frozen=True)
class BoundRow:
    name: str
    n: int
    k: int
    d: int
    q: int
    r: int

    @property
    def ratio_d(self) -> float:
        return self.k * self.d ** (1 / self.q) / self.n

    @property
    def ratio_r(self) -> float:
        return self.k * self.r ** (1 / self.q) / self.n

    @property
    def ratio_d_power(self) -> Fraction:
        """(k · d^(1/q) / n)^q, exact."""
        return Fraction(self.k, self.n) ** self.q * self.d

    def within_bound(self) -> bool:
        """k ≤ n / d^(1/q), decided in integers as k^q · d ≤ n^q."""
        return self.k ** self.q * self.d <= self.n ** self.q


def ratio_less(a: BoundRow, b: BoundRow) -> bool:
    """Exact test of a.ratio_d < b.ratio_d."""
    return a.ratio_d_power ** b.q < b.ratio_d_power ** a.q


def rate_bound_report(entries: Iterable[tuple[LinearCode, LocalityCertificate]]) -> list[BoundRow]:
    """One row per code; codes without d or in the weight-1 regime are skipped."""
    rows = []
    for code, cert in entries:
        label = code.name or str(code)
        if code.d is None:
            warnings.warn(f"{label}: distance unknown, row omitted", stacklevel=2)
            continue
        if cert.q < 2:
            warnings.warn(f"{label}: weight-1 regime (q={cert.q}), row omitted", stacklevel=2)
            continue
        rows.append(BoundRow(label, code.n, code.k, code.d, cert.q, cert.r))
    return rows


def format_bound_table(rows: Sequence[BoundRow]) -> str:
    head = f"{'code':<16}{'n':>7}{'k':>5}{'d':>7}{'q':>4}{'r':>6}{'k·d^(1/q)/n':>14}{'k·r^(1/q)/n':>14}"
    lines = [head]
    for row in rows:
        lines.append(f"{row.name:<16}{row.n:>7}{row.k:>5}{row.d:>7}{row.q:>4}{row.r:>6}"
                     f"{row.ratio_d:>14.6f}{row.ratio_r:>14.6f}")
    return "\n".join(lines)


def influence_region(code: LinearCode, doubled: "GateNetlist", beta: int) -> list[int]:
    """Code coordinates whose first-block wires reach output ``n + beta``.

    The second block and the ancillas enter the doubled gadget as zeros, so
    only first-block inputs carry information about the message.
    """
    from .circuit import influence

    members = influence(doubled, code.n + beta).members
    return sorted(x for x in members if x < code.n)


def extract_locality_from_gadget(code: LinearCode, netlist: "GateNetlist", i: int, j: int,
                                 max_weight: Optional[int] = None) -> RepairGroupSet:
    """Recover disjoint repair groups for ``i`` from a CNOT_{i,j} gadget.

    The gadget is verified, wrapped in its doubled form, and for every
    coordinate ``beta`` of ``supp(g_j)`` the repair vectors living inside the
    influence of output ``n + beta`` are collected. The greedy matching over
    all of them is returned.
    """
    from .gadgets import build_doubled_netlist, encoding_witness
    from .errors import GadgetPreconditionError

    witness = encoding_witness(code, netlist, i, j)
    if witness is not None:
        raise GadgetPreconditionError(
            f"netlist does not implement CNOT({i},{j}); fails on message {witness}")
    doubled = build_doubled_netlist(code, netlist)
    q_bound = 4 * 2 ** netlist.depth
    if max_weight is not None:
        q_bound = min(q_bound, max_weight)
    found: dict[int, RepairVector] = {}
    for beta in code.row(j).support:
        region = influence_region(code, doubled, beta)
        cands = enumerate_repair_vectors(code, i, min(q_bound, len(region)), region)
        if not cands:
            raise LocalityContradiction(
                beta, f"no linear reader of m_{i} inside the influence of coordinate {beta}")
        for c in cands:
            found[c.u.value] = c
    return extract_disjoint_groups(list(found.values()), i)
