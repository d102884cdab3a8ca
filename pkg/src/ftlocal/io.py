"""Text and JSON formats. Every index written or read here is 1-based."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

from .adversary import AttackResult
from .circuit import Gate, GateNetlist
from .errors import DimensionError
from .f2core import BitVector, ErasureWord, LinearCode
from .gadgets import GadgetReport, GadgetSpec
from .harness import RandomErasure, ScheduleEntry, SimulationReport, Step
from .locality import LocalityCertificate, RepairGroupSet, RepairVector


def _one_based(indices: Iterable[int]) -> list[int]:
    return [t + 1 for t in indices]


def _zero_based(indices: Iterable[int], n: int) -> list[int]:
    out = []
    for t in indices:
        if not 1 <= int(t) <= n:
            raise IndexError(f"index {t} outside 1..{n}")
        out.append(int(t) - 1)
    return out


def _fraction(x: Fraction) -> str:
    return str(Fraction(x))


# code JSON

def code_to_dict(code: LinearCode) -> dict:
    return {"name": code.name, "n": code.n, "k": code.k, "d": code.d,
            "generator": [str(g) for g in code.generator]}


def code_from_dict(data: dict) -> LinearCode:
    rows = data["generator"]
    n = int(data["n"])
    for r in rows:
        if len(r) != n:
            raise DimensionError(f"generator row {r!r} does not have n={n} characters")
    code = LinearCode.from_generator(rows, d=data.get("d"), name=data.get("name", ""))
    if "k" in data and int(data["k"]) != code.k:
        raise DimensionError(f"declared k={data['k']} but generator has {code.k} rows")
    return code


def dump_code(code: LinearCode) -> str:
    return json.dumps(code_to_dict(code), indent=2)


def load_code(text: str) -> LinearCode:
    return code_from_dict(json.loads(text))


# erasure words

def format_erasure_word(word: ErasureWord) -> str:
    return str(word)


def parse_erasure_word(text: str) -> ErasureWord:
    return ErasureWord.from_string(text)


# locality certificates

def certificate_to_dict(cert: LocalityCertificate) -> dict:
    return {
        "code": cert.code_name, "n": cert.n, "k": cert.k,
        "q": cert.q, "r": cert.r, "bound_ratio": cert.bound_ratio,
        "indices": [
            {"i": g.i + 1, "q": g.q, "r": g.r,
             "groups": [_one_based(v.support) for v in g.groups]}
            for g in cert.groups],
    }


def certificate_from_dict(data: dict) -> LocalityCertificate:
    n, k = int(data["n"]), int(data["k"])
    groups = []
    for entry in data["indices"]:
        i = int(entry["i"]) - 1
        vecs = tuple(RepairVector(i, BitVector.from_support(n, _zero_based(s, n)))
                     for s in entry["groups"])
        groups.append(RepairGroupSet(i, vecs))
    groups.sort(key=lambda g: g.i)
    return LocalityCertificate(n, k, tuple(groups), data.get("code", ""))


def dump_certificate(cert: LocalityCertificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2)


def load_certificate(text: str) -> LocalityCertificate:
    return certificate_from_dict(json.loads(text))


# netlist text
#   width=<int> ancilla_from=<int>
#   L: CNOT c t; NOT a; ...

_HEADER = re.compile(r"^\s*width\s*=\s*(\d+)\s+ancilla_from\s*=\s*(\d+)\s*$")


def format_netlist(netlist: GateNetlist) -> str:
    lines = [f"width={netlist.width} ancilla_from={netlist.ancilla_from + 1}"]
    for layer in netlist.layers:
        parts = [f"{g.kind} " + " ".join(str(w + 1) for w in g.wires) for g in layer]
        lines.append("L: " + "; ".join(parts))
    return "\n".join(lines) + "\n"


def parse_netlist(text: str) -> GateNetlist:
    """Inverse of :func:`format_netlist`.

    ``ancilla_from`` is the 1-based number of the first ancilla wire, so a
    netlist without ancillas has ``ancilla_from = width + 1``.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ValueError("empty netlist")
    head = _HEADER.match(lines[0])
    if not head:
        raise ValueError(f"bad netlist header: {lines[0]!r}")
    width, anc = int(head.group(1)), int(head.group(2)) - 1
    layers = []
    for ln in lines[1:]:
        if not ln.startswith("L:"):
            raise ValueError(f"layer lines start with 'L:': {ln!r}")
        gates = []
        for part in ln[2:].split(";"):
            tokens = part.split()
            if not tokens:
                continue
            kind, wires = tokens[0].upper(), tuple(_zero_based(tokens[1:], width))
            gates.append(Gate(kind, wires))
        layers.append(tuple(gates))
    return GateNetlist(width, tuple(layers), anc)


# sparse ideal circuits: one "CNOT i j" per line

def format_circuit(circuit: Sequence[Step]) -> str:
    return "".join(f"CNOT {i + 1} {j + 1}\n" for i, j in circuit)


def parse_circuit(text: str, k: Optional[int] = None) -> list[Step]:
    steps = []
    for lineno, ln in enumerate(text.splitlines(), 1):
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        tokens = ln.split()
        if len(tokens) != 3 or tokens[0].upper() != "CNOT":
            raise ValueError(f"line {lineno}: expected 'CNOT i j', got {ln!r}")
        i, j = int(tokens[1]), int(tokens[2])
        if k is not None and not (1 <= i <= k and 1 <= j <= k):
            raise IndexError(f"line {lineno}: indices must lie in 1..{k}")
        if i < 1 or j < 1:
            raise IndexError(f"line {lineno}: indices are 1-based")
        steps.append((i - 1, j - 1))
    return steps


# adversary schedules
#   {"steps": [[1, 5], {"random": 1, "seed": 7}, "random 1 7", null, ...]}

def schedule_from_json(data: Any, n: int) -> list[ScheduleEntry]:
    items = data["steps"] if isinstance(data, dict) else data
    out: list[ScheduleEntry] = []
    for item in items:
        if item is None:
            out.append(None)
        elif isinstance(item, str):
            tokens = item.split()
            if len(tokens) != 3 or tokens[0] != "random":
                raise ValueError(f"bad schedule entry {item!r}; use 'random w seed'")
            out.append(RandomErasure(int(tokens[1]), int(tokens[2])))
        elif isinstance(item, dict):
            if "random" in item:
                out.append(RandomErasure(int(item["random"]), int(item.get("seed", 0))))
            else:
                out.append(_zero_based(item.get("erase", []), n))
        else:
            out.append(_zero_based(item, n))
    return out


def schedule_to_json(schedule: Sequence[ScheduleEntry]) -> dict:
    steps: list[Any] = []
    for entry in schedule:
        if entry is None:
            steps.append(None)
        elif isinstance(entry, RandomErasure):
            steps.append({"random": entry.weight, "seed": entry.seed})
        else:
            steps.append(_one_based(entry))
    return {"steps": steps}


# gadget bundles

def report_to_dict(report: Optional[GadgetReport], k: int) -> Optional[dict]:
    if report is None:
        return None
    return {
        "encodes_ok": report.encodes_ok,
        "epsilon_dataflow": _fraction(report.epsilon_dataflow),
        "epsilon_blanket": _fraction(report.epsilon_blanket),
        "mode": report.mode,
        "epsilon_tested": _fraction(report.epsilon_tested),
        "max_erasures": report.max_erasures,
        "exhaustive": report.exhaustive,
        "cases_checked": report.cases_checked,
        "depth": report.depth, "width": report.width, "ancilla_count": report.ancilla_count,
        "passed": report.passed,
        "witnesses": [
            {"message": str(BitVector(w.message, k)),
             "erasure": _one_based(w.erasure), "kind": w.kind,
             "output_erased": _one_based(w.output_erased)}
            for w in report.witnesses],
    }


def bundle_to_dict(gadget: GadgetSpec, report: Optional[GadgetReport] = None) -> dict:
    return {
        "code": code_to_dict(gadget.code),
        "control": gadget.i + 1,
        "target": gadget.j + 1,
        "partition": [_one_based(p) for p in gadget.partition],
        "groups": [_one_based(v.support) for v in gadget.groups.groups],
        "netlist": format_netlist(gadget.netlist),
        "report": report_to_dict(report, gadget.code.k),
    }


def bundle_from_dict(data: dict) -> GadgetSpec:
    code = code_from_dict(data["code"])
    i, j = int(data["control"]) - 1, int(data["target"]) - 1
    vecs = tuple(RepairVector(i, BitVector.from_support(code.n, _zero_based(s, code.n)))
                 for s in data["groups"])
    partition = tuple(tuple(_zero_based(p, code.n)) for p in data["partition"])
    netlist = parse_netlist(data["netlist"])
    return GadgetSpec(code, i, j, netlist, partition, RepairGroupSet(i, vecs))


def dump_bundle(gadget: GadgetSpec, report: Optional[GadgetReport] = None) -> str:
    return json.dumps(bundle_to_dict(gadget, report), indent=2)


def load_bundle(text: str) -> GadgetSpec:
    return bundle_from_dict(json.loads(text))


# attack reports

def attack_to_dict(result: AttackResult, replay: Optional[str] = None) -> dict:
    return {
        "found": result.found,
        "strategy": result.strategy,
        "erasure": _one_based(result.erasure),
        "message": None if result.message is None else str(result.message),
        "failure_kind": result.failure_kind,
        "output_erased": _one_based(result.output_erased),
        "within_budget": result.within_budget,
        "budget": result.budget,
        "cases_checked": result.cases_checked,
        "notes": list(result.notes),
        "replay": replay,
    }


# simulation reports

def simulation_to_dict(report: SimulationReport) -> dict:
    return {
        "code": report.code_name, "n": report.n, "k": report.k,
        "input": report.input_message,
        "expected": report.expected_message,
        "final": report.final_message,
        "halted_at": None if report.halted_at is None else report.halted_at + 1,
        "succeeded": report.succeeded,
        "steps": [
            {"gate": [s.gate[0] + 1, s.gate[1] + 1],
             "injected": _one_based(s.injected),
             "output_erased": _one_based(s.output_erased),
             "outcome": s.outcome,
             "within_budget": s.within_budget,
             "budget": s.budget}
            for s in report.steps],
        "width_id": report.width_id, "width_ft": report.width_ft,
        "depth_id": report.depth_id, "depth_ft": report.depth_ft,
        "volume_id": report.volume_id, "volume_ft": report.volume_ft,
        "space_overhead": _fraction(report.space_overhead),
    }


def dump_simulation(report: SimulationReport) -> str:
    return json.dumps(simulation_to_dict(report), indent=2, sort_keys=True)
