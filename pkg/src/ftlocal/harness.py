"""Simulation of sparse CNOT circuits on encoded data under erasures.

Every ideal step ``CNOT i j`` becomes a gadget. Each step runs as
inject erasures -> gadget -> error correction, where error correction is the
ideal decoder followed by re-encoding the decoded message. Error correction
only ever sees the data block after the gadget finishes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .circuit import Mode, evaluate, pad_input
from .errors import CompilationError, ConstructionError, CorruptionError
from .f2core import BitVector, ErasureWord, LinearCode, NotDecodable, ideal_decode, index_mask
from .gadgets import (GadgetSpec, build_encoded_cnot, cnot_message, encoding_witness,
                      robustness_threshold, strict_budget)
from .locality import LocalityCertificate, RepairGroupSet

Step = tuple[int, int]


def compile_circuit(circuit: Sequence[Step], code: LinearCode,
                    certificates: Union[LocalityCertificate, Mapping[int, RepairGroupSet]],
                    ) -> list[GadgetSpec]:
    """One verified gadget per time step; identical steps share a gadget."""
    if isinstance(certificates, LocalityCertificate):
        groups = {g.i: g for g in certificates.groups}
    else:
        groups = dict(certificates)
    built: dict[Step, GadgetSpec] = {}
    plan = []
    for t, (i, j) in enumerate(circuit):
        if not (0 <= i < code.k and 0 <= j < code.k):
            raise CompilationError(f"step {t + 1}: index out of range for k={code.k}")
        if i == j:
            raise CompilationError(f"step {t + 1}: CNOT needs distinct indices")
        if (i, j) not in built:
            g = groups.get(i)
            if g is None or g.r == 0:
                raise CompilationError(f"no repair groups for index {i + 1}")
            try:
                gadget = build_encoded_cnot(code, i, j, g)
            except ConstructionError as exc:
                raise CompilationError(f"step {t + 1}: {exc}") from exc
            witness = encoding_witness(code, gadget.netlist, i, j)
            if witness is not None:
                raise CompilationError(f"step {t + 1}: gadget fails on message {witness}")
            built[(i, j)] = gadget
        plan.append(built[(i, j)])
    return plan


def ideal_run(circuit: Sequence[Step], m: int) -> int:
    for i, j in circuit:
        m = cnot_message(m, i, j)
    return m


@dataclass(frozen=True)
class RandomErasure:
    weight: int
    seed: int


ScheduleEntry = Union[Sequence[int], RandomErasure, None]


@dataclass
class StepRecord:
    gate: Step
    injected: tuple[int, ...]
    output_erased: tuple[int, ...]
    outcome: str  # "ok", "not-decodable" or "corrupted"
    within_budget: bool
    budget: int


@dataclass
class SimulationReport:
    code_name: str
    n: int
    k: int
    steps: list[StepRecord] = field(default_factory=list)
    input_message: str = ""
    final_message: Optional[str] = None
    expected_message: str = ""
    halted_at: Optional[int] = None
    width_id: int = 0
    width_ft: int = 0
    depth_id: int = 0
    depth_ft: int = 0

    @property
    def volume_id(self) -> int:
        return self.width_id * self.depth_id

    @property
    def volume_ft(self) -> int:
        return self.width_ft * self.depth_ft

    @property
    def space_overhead(self) -> Fraction:
        return Fraction(self.width_ft, self.width_id)

    @property
    def succeeded(self) -> bool:
        return self.halted_at is None and self.final_message == self.expected_message

    @property
    def all_within_budget(self) -> bool:
        return all(s.within_budget for s in self.steps)


def _draw(entry: ScheduleEntry, width: int) -> tuple[int, ...]:
    if entry is None:
        return ()
    if isinstance(entry, RandomErasure):
        rng = random.Random(entry.seed)
        return tuple(sorted(rng.sample(range(width), min(entry.weight, width))))
    return tuple(sorted(set(entry)))


def run(plan: Sequence[GadgetSpec], code: LinearCode, m: BitVector,
        schedule: Sequence[ScheduleEntry] = (), mode: Mode = "dataflow", *,
        erase_ancillas: bool = False) -> SimulationReport:
    """Simulate ``plan`` on input ``m`` with per-step injected erasures.

    Over-budget injections are allowed and flagged; a failed decode halts the
    run at that step.
    """
    if m.length != code.k:
        raise ValueError(f"input has {m.length} bits, code has k={code.k}")
    if code.d is None:
        raise ValueError("simulation needs the code distance")
    circuit = [(g.i, g.j) for g in plan]
    expected = BitVector(ideal_run(circuit, m.value), code.k)
    report = SimulationReport(
        code.name, code.n, code.k, input_message=str(m), expected_message=str(expected),
        width_id=code.k, depth_id=len(plan),
        width_ft=max([code.n] + [g.netlist.width for g in plan]),
        depth_ft=sum(g.depth for g in plan))
    current = m
    for t, gadget in enumerate(plan):
        entry = schedule[t] if t < len(schedule) else None
        width = gadget.netlist.width if erase_ancillas else code.n
        injected = _draw(entry, width)
        budget = max(strict_budget(robustness_threshold(gadget, mode), code.d), 0)
        word = code.encode(current)
        full = ErasureWord(word.value, index_mask(injected, gadget.netlist.width),
                           gadget.netlist.width)
        out = evaluate(gadget.netlist, full, mode)
        data_mask = (1 << code.n) - 1
        data = ErasureWord(out.bits & data_mask, out.erased & data_mask, code.n)
        try:
            decoded = ideal_decode(code, data)
            outcome = "not-decodable" if isinstance(decoded, NotDecodable) else "ok"
        except CorruptionError:
            decoded, outcome = None, "corrupted"
        record = StepRecord((gadget.i, gadget.j), injected,
                            tuple(sorted(data.erased_set)), outcome,
                            len(injected) <= budget, budget)
        report.steps.append(record)
        if outcome != "ok":
            report.halted_at = t
            return report
        current = decoded
    report.final_message = str(current)
    return report


def overhead_report(report: SimulationReport) -> list[tuple[str, object, object]]:
    """Rows (quantity, ideal, fault-tolerant); asserts W_ft/W_id ≥ n/k.

    Error-correction rounds are not counted in the fault-tolerant depth.
    """
    bound = Fraction(report.n, report.k)
    if report.space_overhead < bound:
        raise AssertionError(
            f"space overhead {report.space_overhead} below inverse rate {bound}")
    return [
        ("width", report.width_id, report.width_ft),
        ("depth", report.depth_id, report.depth_ft),
        ("volume", report.volume_id, report.volume_ft),
        ("space overhead", "", report.space_overhead),
        ("inverse rate n/k", "", bound),
    ]


def format_overhead(rows: Sequence[tuple[str, object, object]]) -> str:
    lines = [f"{'quantity':<18}{'ideal':>10}{'fault-tolerant':>16}"]
    for name, a, b in rows:
        lines.append(f"{name:<18}{str(a):>10}{str(b):>16}")
    return "\n".join(lines)
