"""Erasure attacks on encoded gadgets.

Every strategy reports a (message, erasure set) pair that is replayed
through the gadget before being returned, so a ``found`` result is always a
real failure of the robustness condition.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional

from .circuit import Mode
from .errors import CapacityError
from .f2core import BitVector
from .gadgets import (Failure, GadgetSpec, Sweep, _message_batch, erasure_sets,
                      robustness_threshold, strict_budget)
from .locality import RepairGroupSet

EXHAUSTIVE_BUDGET = 10 ** 7


@dataclass
class AttackResult:
    found: bool
    strategy: str
    erasure: tuple[int, ...] = ()
    message: Optional[BitVector] = None
    failure_kind: Optional[str] = None
    output_erased: tuple[int, ...] = ()
    within_budget: bool = False
    budget: int = 0
    cases_checked: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def violates_robustness(self) -> bool:
        """A failure that uses no more erasures than the gadget claims to survive."""
        return self.found and self.within_budget


def _attack_wires(gadget: GadgetSpec, erase_ancillas: bool) -> list[int]:
    return list(range(gadget.netlist.width if erase_ancillas else gadget.code.n))


def _budget(gadget: GadgetSpec, mode: Mode) -> int:
    if gadget.code.d is None:
        raise ValueError("attacks need the code distance")
    return max(strict_budget(robustness_threshold(gadget, mode), gadget.code.d), 0)


def _result(gadget: GadgetSpec, strategy: str, failure: Optional[Failure], mode: Mode,
            checked: int) -> AttackResult:
    budget = _budget(gadget, mode)
    if failure is None:
        return AttackResult(False, strategy, budget=budget, cases_checked=checked)
    return AttackResult(
        True, strategy, failure.erasure, BitVector(failure.message, gadget.code.k),
        failure.kind, failure.output_erased,
        within_budget=len(failure.erasure) <= budget, budget=budget, cases_checked=checked)


def replay(gadget: GadgetSpec, message: BitVector, erasure: tuple[int, ...],
           mode: Mode = "dataflow") -> Optional[Failure]:
    """Run one (message, erasure) pair; the failure it causes, if any."""
    sweep = Sweep(gadget, mode, [message.value])
    hits = sweep.run([tuple(sorted(erasure))])
    return hits[0] if hits else None


def attack_exhaustive(gadget: GadgetSpec, max_weight: int, mode: Mode = "dataflow", *,
                      erase_ancillas: bool = False,
                      budget: int = EXHAUSTIVE_BUDGET) -> AttackResult:
    """Lexicographically first failing pair with |E| ≤ ``max_weight``.

    Pairs are ordered by |E|, then E, then message value.
    """
    wires = _attack_wires(gadget, erase_ancillas)
    sets = sum(math.comb(len(wires), w) for w in range(max_weight + 1))
    messages = _message_batch(gadget.code.k, 0)
    if sets * len(messages) > budget:
        raise CapacityError(
            f"{sets} erasure sets × {len(messages)} messages exceeds {budget}; "
            "use the random strategy")
    sweep = Sweep(gadget, mode, messages)
    hits = sweep.run(erasure_sets(wires, max_weight))
    return _result(gadget, "exhaustive", hits[0] if hits else None, mode, sweep.checked)


def attack_vertex_cover(gadget: GadgetSpec, groups: RepairGroupSet,
                        mode: Mode = "dataflow") -> AttackResult:
    """Erase every coordinate covered by a maximal matching of repair groups.

    Each repair vector outside a maximal matching meets the matching, so
    erasing the covered coordinates leaves no intact linear reader of
    ``m_i``. When the matching is small this costs few erasures while the
    output loses a whole codeword support.
    """
    if not groups.groups:
        return AttackResult(False, "vertex-cover", budget=_budget(gadget, mode),
                            notes=["empty matching"])
    erasure = tuple(t for t in range(gadget.code.n) if groups.covered >> t & 1)
    messages = _message_batch(gadget.code.k, 0)
    sweep = Sweep(gadget, mode, messages)
    hits = sweep.run([erasure])
    result = _result(gadget, "vertex-cover", hits[0] if hits else None, mode, sweep.checked)
    if result.found and not result.within_budget:
        result.notes.append(
            f"cover of size {len(erasure)} exceeds the robustness budget {result.budget}")
    return result


def attack_random(gadget: GadgetSpec, max_weight: int, trials: int, seed: int,
                  mode: Mode = "dataflow", *, erase_ancillas: bool = False) -> AttackResult:
    """Seeded random search; the earliest failing trial is returned."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    wires = _attack_wires(gadget, erase_ancillas)
    k = gadget.code.k
    pairs = []
    for _ in range(trials):
        w = rng.randint(0, min(max_weight, len(wires)))
        pairs.append((rng.getrandbits(k), tuple(sorted(rng.sample(wires, w)))))
    checked = 0
    for m, E in pairs:
        sweep = Sweep(gadget, mode, [m])
        hits = sweep.run([E])
        checked += 1
        if hits:
            return _result(gadget, "random", hits[0], mode, checked)
    return _result(gadget, "random", None, mode, checked)


def run_attacks(gadget: GadgetSpec, groups: Optional[RepairGroupSet] = None,
                mode: Mode = "dataflow", *, max_weight: Optional[int] = None,
                trials: int = 1000, seed: int = 0,
                erase_ancillas: bool = False) -> AttackResult:
    """Vertex cover first, then exhaustive by ascending weight, then random."""
    weight = _budget(gadget, mode) if max_weight is None else max_weight
    if groups is not None:
        res = attack_vertex_cover(gadget, groups, mode)
        if res.found and len(res.erasure) <= weight:
            return res
    try:
        res = attack_exhaustive(gadget, weight, mode, erase_ancillas=erase_ancillas)
    except CapacityError:
        res = attack_random(gadget, weight, trials, seed, mode, erase_ancillas=erase_ancillas)
    return res
