"""Layered NOT/CNOT netlists with erasure propagation.

Wires ``0 .. ancilla_from-1`` carry data; wires from ``ancilla_from`` on are
ancillas that start at 0. Two erasure rules are supported:

``blanket``
    a gate with any erased input erases all of its outputs.
``dataflow``
    an output is erased only if an input it depends on is erased, so the
    control output of a CNOT is erased only when the control input is.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, NamedTuple, Sequence

import numpy as np

from . import kernels
from .errors import DimensionError
from .f2core import ErasureWord, index_mask

Mode = Literal["blanket", "dataflow"]
MODES: tuple[Mode, ...] = ("blanket", "dataflow")


class Gate(NamedTuple):
    kind: str
    wires: tuple[int, ...]

    @classmethod
    def cnot(cls, control: int, target: int) -> "Gate":
        return cls("CNOT", (control, target))

    @classmethod
    def not_(cls, wire: int) -> "Gate":
        return cls("NOT", (wire,))


def _check_gate(gate: Gate, width: int) -> None:
    if gate.kind == "CNOT":
        if len(gate.wires) != 2:
            raise ValueError(f"CNOT needs two wires, got {gate.wires}")
        if gate.wires[0] == gate.wires[1]:
            raise ValueError(f"CNOT control and target coincide: {gate.wires}")
    elif gate.kind == "NOT":
        if len(gate.wires) != 1:
            raise ValueError(f"NOT needs one wire, got {gate.wires}")
    else:
        raise ValueError(f"unsupported gate kind {gate.kind!r}")
    for w in gate.wires:
        if not 0 <= w < width:
            raise DimensionError(f"wire {w} outside width {width}")


def validate_layers(layers: Sequence[Sequence[Gate]], width: int) -> None:
    """Raise unless every gate is legal and no wire is used twice in a layer."""
    for depth, layer in enumerate(layers):
        seen: set[int] = set()
        for gate in layer:
            _check_gate(gate, width)
            for w in gate.wires:
                if w in seen:
                    raise ValueError(f"wire {w} used twice in layer {depth}")
                seen.add(w)


@dataclass(frozen=True)
class GateNetlist:
    width: int
    layers: tuple[tuple[Gate, ...], ...]
    ancilla_from: int

    def __post_init__(self):
        object.__setattr__(
            self, "layers",
            tuple(tuple(Gate(g.kind, tuple(g.wires)) for g in layer) for layer in self.layers))
        if not 0 <= self.ancilla_from <= self.width:
            raise DimensionError("ancilla_from must lie in [0, width]")
        validate_layers(self.layers, self.width)

    @classmethod
    def identity(cls, width: int, ancilla_from: int | None = None) -> "GateNetlist":
        return cls(width, (), width if ancilla_from is None else ancilla_from)

    @classmethod
    def from_gates(cls, width: int, gates: Iterable[Gate],
                   ancilla_from: int | None = None) -> "GateNetlist":
        """Schedule gates as early as possible, keeping their relative order
        on every shared wire."""
        busy = [0] * width  # first free layer per wire
        layers: list[list[Gate]] = []
        for gate in gates:
            _check_gate(gate, width)
            at = max(busy[w] for w in gate.wires)
            while len(layers) <= at:
                layers.append([])
            layers[at].append(gate)
            for w in gate.wires:
                busy[w] = at + 1
        return cls(width, tuple(tuple(l) for l in layers),
                   width if ancilla_from is None else ancilla_from)

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def volume(self) -> int:
        return self.width * self.depth

    @property
    def data_width(self) -> int:
        return self.ancilla_from

    @property
    def ancilla_count(self) -> int:
        return self.width - self.ancilla_from

    @property
    def gate_count(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def gates(self) -> Iterable[Gate]:
        for layer in self.layers:
            yield from layer

    @cached_property
    def gate_array(self) -> np.ndarray:
        """Gates in the (kind, a, b) int32 layout the kernels expect."""
        rows = []
        for g in self.gates():
            if g.kind == "NOT":
                rows.append((kernels._kernels_py.NOT, g.wires[0], 0))
            else:
                rows.append((kernels._kernels_py.CNOT, g.wires[0], g.wires[1]))
        return np.array(rows, dtype=np.int32).reshape(-1, 3)

    def validate(self) -> None:
        validate_layers(self.layers, self.width)
        if not 0 <= self.ancilla_from <= self.width:
            raise DimensionError("ancilla_from must lie in [0, width]")


def _check_mode(mode: str) -> bool:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode == "dataflow"


def evaluate_batch(netlist: GateNetlist, values: np.ndarray, erased: np.ndarray,
                   mode: Mode = "blanket") -> tuple[np.ndarray, np.ndarray]:
    """Evaluate many inputs at once. Arrays have shape (batch, width).

    Returns fresh arrays; values on erased wires are meaningless.
    """
    dataflow = _check_mode(mode)
    values = np.array(values, dtype=np.uint8, order="C", copy=True, ndmin=2)
    erased = np.array(erased, dtype=np.uint8, order="C", copy=True, ndmin=2)
    if values.shape[1] != netlist.width or erased.shape != values.shape:
        raise DimensionError(
            f"expected arrays of shape (batch, {netlist.width}), "
            f"got {values.shape} and {erased.shape}")
    kernels.run_netlist(netlist.gate_array, values, erased, dataflow)
    return values, erased


def evaluate(netlist: GateNetlist, word: ErasureWord, mode: Mode = "blanket") -> ErasureWord:
    if word.length != netlist.width:
        raise DimensionError(f"input has length {word.length}, netlist width is {netlist.width}")
    values = np.array([[word.bits >> t & 1 for t in range(word.length)]], dtype=np.uint8)
    erased = np.array([[word.erased >> t & 1 for t in range(word.length)]], dtype=np.uint8)
    values, erased = evaluate_batch(netlist, values, erased, mode)
    return ErasureWord.from_symbols(
        None if e else int(v) for v, e in zip(values[0], erased[0]))


def pad_input(netlist: GateNetlist, data: ErasureWord) -> ErasureWord:
    """Extend a data-block word with zeroed ancillas."""
    if data.length != netlist.ancilla_from:
        raise DimensionError(
            f"data word has length {data.length}, netlist expects {netlist.ancilla_from}")
    return ErasureWord(data.bits, data.erased, netlist.width)


@dataclass(frozen=True)
class InfluenceSet:
    beta: int
    members: frozenset[int]

    def __len__(self) -> int:
        return len(self.members)


def influence(netlist: GateNetlist, beta: int) -> InfluenceSet:
    """Input wires joined to output wire ``beta`` by a path in the gate graph.

    Every gate links each of its inputs to each of its outputs.
    """
    if not 0 <= beta < netlist.width:
        raise DimensionError(f"wire {beta} outside width {netlist.width}")
    reach = 1 << beta
    for layer in reversed(netlist.layers):
        for gate in layer:
            gmask = index_mask(gate.wires, netlist.width)
            if reach & gmask:
                reach |= gmask
    members = frozenset(t for t in range(netlist.width) if reach >> t & 1)
    return InfluenceSet(beta, members)


def propagate_mask(netlist: GateNetlist, erased: int, mode: Mode = "blanket") -> int:
    """Erasure propagation on int bitsets; independent of wire values."""
    dataflow = _check_mode(mode)
    for layer in netlist.layers:
        for gate in layer:
            if gate.kind != "CNOT":
                continue
            c, t = gate.wires
            ce, te = erased >> c & 1, erased >> t & 1
            if dataflow:
                if ce:
                    erased |= 1 << t
            elif ce or te:
                erased |= (1 << c) | (1 << t)
    return erased


def erasure_growth_bound(netlist: GateNetlist, erased: Iterable[int]) -> frozenset[int]:
    """Wires erased after running ``netlist`` in blanket mode with ⊥ on ``erased``.

    Blanket propagation ignores values, so this is exact. Each layer at most
    doubles the erased set, which is asserted.
    """
    start = index_mask(erased, netlist.width)
    out = propagate_mask(netlist, start, "blanket")
    if out.bit_count() > (1 << netlist.depth) * start.bit_count():
        raise AssertionError("erasure growth exceeded 2^depth |E|")
    return frozenset(t for t in range(netlist.width) if out >> t & 1)


def compose(*netlists: GateNetlist) -> GateNetlist:
    """Run netlists one after another on a shared data block.

    All netlists must agree on the data width; ancilla ranges overlap and the
    result is as wide as the widest input.
    """
    if not netlists:
        raise ValueError("compose needs at least one netlist")
    data = netlists[0].ancilla_from
    for nl in netlists[1:]:
        if nl.ancilla_from != data:
            raise DimensionError(
                f"data widths differ: {data} != {nl.ancilla_from}")
    width = max(nl.width for nl in netlists)
    layers = tuple(layer for nl in netlists for layer in nl.layers)
    return GateNetlist(width, layers, data)


def tensor(*netlists: GateNetlist) -> GateNetlist:
    """Run netlists side by side on disjoint wires.

    Data wires of all parts come first (in order), then all ancillas.
    """
    if not netlists:
        raise ValueError("tensor needs at least one netlist")
    data_total = sum(nl.ancilla_from for nl in netlists)
    width = sum(nl.width for nl in netlists)
    data_off = 0
    anc_off = data_total
    depth = max(nl.depth for nl in netlists)
    layers: list[list[Gate]] = [[] for _ in range(depth)]
    for nl in netlists:
        def remap(w: int, nl=nl, d0=data_off, a0=anc_off) -> int:
            return d0 + w if w < nl.ancilla_from else a0 + w - nl.ancilla_from
        for t, layer in enumerate(nl.layers):
            layers[t].extend(Gate(g.kind, tuple(remap(w) for w in g.wires)) for g in layer)
        data_off += nl.ancilla_from
        anc_off += nl.ancilla_count
    return GateNetlist(width, tuple(tuple(l) for l in layers), data_total)


def relabel(netlist: GateNetlist, mapping: Sequence[int], width: int,
            ancilla_from: int) -> GateNetlist:
    """Copy of ``netlist`` with wire ``w`` renamed to ``mapping[w]``."""
    layers = tuple(
        tuple(Gate(g.kind, tuple(mapping[w] for w in g.wires)) for g in layer)
        for layer in netlist.layers)
    return GateNetlist(width, layers, ancilla_from)
