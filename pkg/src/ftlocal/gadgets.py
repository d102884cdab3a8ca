"""Encoded CNOT gadgets built from disjoint repair groups.

For ``CNOT_{i,j}`` the support of ``g_j`` is split into one part per repair
group of ``i``. Each group XORs its query coordinates into a fresh ancilla,
which then flips every coordinate of its part. A ⊥ in a query coordinate
therefore erases exactly the part that group was responsible for.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .circuit import Gate, GateNetlist, Mode, evaluate_batch, relabel
from .errors import CapacityError, ConstructionError
from .f2core import BitVector, LinearCode, is_decodable
from .locality import RepairGroupSet, verify_repair_vector

ANCILLA_FACTOR = 4
EXHAUSTIVE_MESSAGES = 20
RANDOM_MESSAGES = 10_000
EXHAUSTIVE_ERASURE_SETS = 1_000_000
SAMPLED_ERASURE_SETS = 20_000
CHUNK_ROWS = 1 << 14


def cnot_message(m: int, i: int, j: int) -> int:
    """CNOT_{i,j} on a message stored as an int bitset."""
    return m ^ ((m >> i & 1) << j)


def split_support(support: Sequence[int], parts: int) -> tuple[tuple[int, ...], ...]:
    """Contiguous split of sorted ``support`` into ``parts`` near-equal pieces."""
    support = sorted(support)
    base, extra = divmod(len(support), parts)
    out = []
    start = 0
    for a in range(parts):
        size = base + (1 if a < extra else 0)
        out.append(tuple(support[start:start + size]))
        start += size
    return tuple(out)


@dataclass(frozen=True)
class GadgetSpec:
    code: LinearCode
    i: int
    j: int
    netlist: GateNetlist
    partition: tuple[tuple[int, ...], ...]
    groups: RepairGroupSet

    @property
    def depth(self) -> int:
        return self.netlist.depth

    @property
    def eta(self) -> int:
        return max((len(p) for p in self.partition), default=0)

    @property
    def q(self) -> int:
        return self.groups.q

    @property
    def r(self) -> int:
        return self.groups.r

    def lint(self) -> list[str]:
        """Soft checks that do not block construction."""
        notes = []
        gi, gj = self.code.row(self.i).weight, self.code.row(self.j).weight
        if gj > 2 ** self.depth * gi:
            notes.append(f"|g_j| = {gj} exceeds 2^depth |g_i| = {2 ** self.depth * gi}")
        return notes


def build_encoded_cnot(code: LinearCode, i: int, j: int, groups: RepairGroupSet, *,
                       check_disjoint: bool = True,
                       ancilla_factor: int = ANCILLA_FACTOR) -> GadgetSpec:
    """Gadget for ``CNOT_{i,j}`` on ``code`` from repair groups of ``i``.

    With ``check_disjoint=False`` overlapping groups are accepted, which is
    only useful for building deliberately fragile gadgets.
    """
    if not (0 <= i < code.k and 0 <= j < code.k):
        raise ConstructionError(f"indices ({i}, {j}) out of range for k={code.k}")
    if i == j:
        raise ConstructionError("control and target must differ")
    if groups.i != i:
        raise ConstructionError(f"repair groups are for index {groups.i}, not {i}")
    if groups.r == 0:
        raise ConstructionError(f"no repair groups for index {i}")
    for a, g in enumerate(groups.groups):
        if not verify_repair_vector(code, i, g.u):
            raise ConstructionError(f"group {a} does not read m_{i}")
    if check_disjoint and groups.problems(code):
        raise ConstructionError("; ".join(groups.problems(code)))

    target_support = code.row(j).support
    # more groups than targets: drop the highest-numbered groups
    kept = groups.groups[:min(groups.r, len(target_support))]
    if len(kept) > ancilla_factor * code.n:
        raise CapacityError(f"{len(kept)} ancillas exceed the budget {ancilla_factor}·n")
    partition = split_support(target_support, len(kept))
    n = code.n
    width = n + len(kept)

    gates = []
    q = max(g.weight for g in kept)
    for t in range(q):
        for a, g in enumerate(kept):
            sup = g.support
            if t < len(sup):
                gates.append(Gate.cnot(sup[t], n + a))
    eta = max(len(p) for p in partition)
    for s in range(eta):
        for a, part in enumerate(partition):
            if s < len(part):
                gates.append(Gate.cnot(n + a, part[s]))
    netlist = GateNetlist.from_gates(width, gates, ancilla_from=n)
    return GadgetSpec(code, i, j, netlist, partition, RepairGroupSet(i, tuple(kept)))


def _message_batch(k: int, seed: int, limit: int = EXHAUSTIVE_MESSAGES,
                   samples: int = RANDOM_MESSAGES) -> list[int]:
    if k <= limit:
        return list(range(1 << k))
    rng = random.Random(seed)
    return sorted({rng.getrandbits(k) for _ in range(samples)})


def _bit_matrix(words: Sequence[int], width: int) -> np.ndarray:
    """Rows of 0/1 bytes; bit t of ``words[row]`` lands in column t."""
    nbytes = max(1, (width + 7) // 8)
    buf = b"".join(w.to_bytes(nbytes, "little") for w in words)
    packed = np.frombuffer(buf, dtype=np.uint8).reshape(len(words), nbytes)
    return np.unpackbits(packed, axis=1, count=width, bitorder="little")


def _clean_inputs(code: LinearCode, netlist: GateNetlist, messages: Sequence[int]) -> np.ndarray:
    return _bit_matrix([code.encode_int(m) for m in messages], netlist.width)


def encoding_witness(code: LinearCode, netlist: GateNetlist, control: int, target: int,
                     seed: int = 0) -> Optional[BitVector]:
    """First message on which ``netlist`` disagrees with encoded CNOT, or None.

    Exhaustive for k ≤ 20, otherwise 10^4 random messages.
    """
    if netlist.ancilla_from != code.n:
        raise ConstructionError(
            f"netlist data block has {netlist.ancilla_from} wires, code has n={code.n}")
    messages = _message_batch(code.k, seed)
    for start in range(0, len(messages), CHUNK_ROWS):
        chunk = messages[start:start + CHUNK_ROWS]
        values = _clean_inputs(code, netlist, chunk)
        out, _ = evaluate_batch(netlist, values, np.zeros_like(values), "blanket")
        expected = _bit_matrix([code.encode_int(cnot_message(m, control, target))
                                for m in chunk], code.n)
        bad = np.nonzero((out[:, :code.n] != expected).any(axis=1))[0]
        if bad.size:
            return BitVector(chunk[bad[0]], code.k)
    return None


def verify_encodes(gadget: GadgetSpec, seed: int = 0) -> bool:
    return encoding_witness(gadget.code, gadget.netlist, gadget.i, gadget.j, seed) is None


def build_doubled_netlist(code: LinearCode, netlist: GateNetlist) -> GateNetlist:
    """Copy block 1 into block 2, run the gadget on block 2, copy again.

    Maps (C(m), 0^n) to (C(m), m_i g_j); inner ancillas follow block 2.
    """
    n = code.n
    if netlist.ancilla_from != n:
        raise ConstructionError("netlist data block must match the code length")
    width = 2 * n + netlist.ancilla_count
    mapping = [n + w for w in range(netlist.width)]  # data w -> n+w, ancilla n+a -> 2n+a
    inner = relabel(netlist, mapping, width, 2 * n)
    copy = tuple(Gate.cnot(b, n + b) for b in range(n))
    return GateNetlist(width, (copy,) + inner.layers + (copy,), 2 * n)


def build_doubled(gadget: GadgetSpec) -> GateNetlist:
    return build_doubled_netlist(gadget.code, gadget.netlist)


def robustness_threshold(gadget: GadgetSpec, mode: Mode = "dataflow") -> Fraction:
    """Erasure fraction ε the gadget tolerates: |E| < ε·d keeps the output decodable.

    Dataflow: one input erasure ends up as at most ``1 + η`` output
    erasures, giving ``1/(1+η)``, i.e. ``r/(r+|g_j|)`` for an even split.
    Blanket: an erased query wire also erases the rest of its group, and every
    erased wire that is a flip target erases the later targets of its own
    group, giving ``1/((q+1)·η)``; with ``η = 1`` this is
    ``r/(r+|g_j|+(q-1)·r)``.
    """
    eta, q = gadget.eta, gadget.q
    if mode == "dataflow":
        return Fraction(1, 1 + eta)
    if mode == "blanket":
        return Fraction(1, (q + 1) * eta)
    raise ValueError(f"unknown mode {mode!r}")


def strict_budget(epsilon: Fraction, d: int) -> int:
    """Largest |E| with |E| < ε·d."""
    return math.ceil(Fraction(epsilon) * d) - 1


@dataclass(frozen=True)
class Failure:
    message: int
    erasure: tuple[int, ...]
    kind: str  # "not-decodable" or "wrong-decode"
    output_erased: tuple[int, ...]


@dataclass
class GadgetReport:
    encodes_ok: bool
    epsilon_dataflow: Fraction
    epsilon_blanket: Fraction
    depth: int
    width: int
    ancilla_count: int
    mode: Mode = "dataflow"
    epsilon_tested: Fraction = Fraction(0)
    max_erasures: int = 0
    exhaustive: bool = True
    cases_checked: int = 0
    witnesses: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.encodes_ok and not self.witnesses


def erasure_sets(wires: Sequence[int], max_weight: int) -> Iterator[tuple[int, ...]]:
    """All subsets of ``wires`` by ascending size, lexicographic within a size."""
    for w in range(max_weight + 1):
        yield from itertools.combinations(wires, w)


def sampled_erasure_sets(wires: Sequence[int], max_weight: int, count: int,
                         seed: int) -> Iterator[tuple[int, ...]]:
    rng = random.Random(seed)
    for _ in range(count):
        w = rng.randint(0, max_weight)
        yield tuple(sorted(rng.sample(list(wires), w)))


class Sweep:
    """Replays (message, erasure) pairs through a gadget and checks the output.

    A pair fails when the data block is not decodable by the ideal decoder,
    or when a surviving position disagrees with the expected codeword. Both
    checks read the evaluated netlist; nothing is assumed about which wires
    an erasure can reach.
    """

    def __init__(self, gadget: GadgetSpec, mode: Mode, messages: Sequence[int]):
        self.gadget = gadget
        self.mode = mode
        self.messages = list(messages)
        code = gadget.code
        self.clean = _clean_inputs(code, gadget.netlist, self.messages)
        self.expected = _bit_matrix(
            [code.encode_int(cnot_message(m, gadget.i, gadget.j)) for m in self.messages],
            code.n)
        self._decodable: dict[int, bool] = {}
        self.checked = 0

    def _is_decodable(self, mask: int) -> bool:
        hit = self._decodable.get(mask)
        if hit is None:
            hit = self._decodable[mask] = is_decodable(self.gadget.code, mask)
        return hit

    def run(self, erasure_iter: Iterable[tuple[int, ...]],
            max_failures: int = 1) -> list[Failure]:
        """Failures in iteration order, at most one per erasure set."""
        n = self.gadget.code.n
        nm = len(self.messages)
        per_chunk = max(1, CHUNK_ROWS // max(nm, 1))
        failures: list[Failure] = []
        it = iter(erasure_iter)
        while len(failures) < max_failures:
            block = list(itertools.islice(it, per_chunk))
            if not block:
                break
            values = np.tile(self.clean, (len(block), 1))
            erased = np.zeros_like(values)
            for b, E in enumerate(block):
                if E:
                    erased[b * nm:(b + 1) * nm, list(E)] = 1
            out, out_erased = evaluate_batch(self.gadget.netlist, values, erased, self.mode)
            data_erased = out_erased[:, :n]
            wrong = ((out[:, :n] != np.tile(self.expected, (len(block), 1)))
                     & (data_erased == 0)).any(axis=1)
            packed = np.packbits(data_erased, axis=1, bitorder="little")
            for b, E in enumerate(block):
                self.checked += nm
                for off in range(nm):
                    row = b * nm + off
                    mask = int.from_bytes(packed[row].tobytes(), "little")
                    if not self._is_decodable(mask):
                        kind = "not-decodable"
                    elif wrong[row]:
                        kind = "wrong-decode"
                    else:
                        continue
                    failures.append(Failure(
                        self.messages[off], tuple(E), kind,
                        tuple(t for t in range(n) if mask >> t & 1)))
                    break
                if len(failures) >= max_failures:
                    break
        return failures


def certify_robust(gadget: GadgetSpec, epsilon: Fraction | float, mode: Mode = "dataflow", *,
                   erase_ancillas: bool = False, seed: int = 0,
                   max_witnesses: int = 1) -> GadgetReport:
    """Check every message against every erasure set with |E| < ε·d.

    Exhaustive over erasure sets when their count is at most 10^6, otherwise a
    seeded sample of 2·10^4 sets. Failures are collected as witnesses; the
    report never raises.
    """
    code = gadget.code
    if code.d is None:
        raise ValueError("certification needs the code distance")
    epsilon = Fraction(epsilon).limit_denominator(10 ** 9) if isinstance(epsilon, float) else Fraction(epsilon)
    budget = max(strict_budget(epsilon, code.d), 0)
    wires = list(range(gadget.netlist.width if erase_ancillas else code.n))
    total_sets = sum(math.comb(len(wires), w) for w in range(budget + 1))
    exhaustive = total_sets <= EXHAUSTIVE_ERASURE_SETS
    sets = (erasure_sets(wires, budget) if exhaustive
            else sampled_erasure_sets(wires, budget, SAMPLED_ERASURE_SETS, seed))
    encodes_ok = verify_encodes(gadget, seed)
    report = GadgetReport(
        encodes_ok=encodes_ok,
        epsilon_dataflow=robustness_threshold(gadget, "dataflow"),
        epsilon_blanket=robustness_threshold(gadget, "blanket"),
        depth=gadget.depth, width=gadget.netlist.width,
        ancilla_count=gadget.netlist.ancilla_count, mode=mode,
        epsilon_tested=epsilon, max_erasures=budget, exhaustive=exhaustive)
    sweep = Sweep(gadget, mode, _message_batch(code.k, seed, limit=10, samples=256))
    report.witnesses = sweep.run(sets, max_witnesses)
    report.cases_checked = sweep.checked
    return report


def output_erasures(gadget: GadgetSpec, erasure: Iterable[int], mode: Mode = "dataflow") -> frozenset[int]:
    """Data coordinates erased at the gadget output for input erasures ``erasure``."""
    from .circuit import propagate_mask
    from .f2core import index_mask

    out = propagate_mask(gadget.netlist, index_mask(erasure, gadget.netlist.width), mode)
    return frozenset(t for t in range(gadget.code.n) if out >> t & 1)
