import json
import random
from fractions import Fraction

import pytest

from ftlocal import io
from ftlocal.circuit import Gate, GateNetlist
from ftlocal.errors import DimensionError
from ftlocal.f2core import BitVector, ErasureWord
from ftlocal.gadgets import build_encoded_cnot, certify_robust
from ftlocal.harness import RandomErasure, compile_circuit, run
from ftlocal.locality import certify_locality
from ftlocal.zoo import small_zoo

from conftest import random_netlist


@pytest.mark.parametrize("code", small_zoo(), ids=str)
def test_code_roundtrip(code):
    back = io.load_code(io.dump_code(code))
    assert back.rows == code.rows and back.d == code.d and back.name == code.name


def test_code_json_rows_are_coordinate_strings(hadamard3):
    data = json.loads(io.dump_code(hadamard3))
    assert data["generator"][0] == "00001111"
    assert (data["n"], data["k"], data["d"]) == (8, 3, 4)


def test_code_json_errors():
    with pytest.raises(DimensionError):
        io.code_from_dict({"n": 4, "generator": ["101"]})
    with pytest.raises(DimensionError):
        io.code_from_dict({"n": 3, "k": 2, "generator": ["101"]})


def test_erasure_word_text():
    assert str(io.parse_erasure_word("?000?111")) == "?000?111"
    assert io.parse_erasure_word("1?").erased_set == {1}


@pytest.mark.parametrize("code", small_zoo(4), ids=str)
def test_certificate_roundtrip(code):
    cert = certify_locality(code, 3)
    text = io.dump_certificate(cert)
    back = io.load_certificate(text)
    assert back.groups == cert.groups and back.verify(code)
    data = json.loads(text)
    assert data["indices"][0]["i"] == 1
    assert min(min(s) for e in data["indices"] for s in e["groups"]) >= 1


def test_netlist_text(hadamard3):
    nl = GateNetlist(3, ((Gate.cnot(0, 1), Gate.not_(2)), (Gate.cnot(1, 2),)), 2)
    text = io.format_netlist(nl)
    assert text == "width=3 ancilla_from=3\nL: CNOT 1 2; NOT 3\nL: CNOT 2 3\n"
    assert io.parse_netlist(text) == nl


def test_netlist_roundtrip_random():
    rng = random.Random(0)
    for _ in range(30):
        nl = random_netlist(rng, rng.randint(2, 12), rng.randint(0, 4), ancillas=rng.randint(0, 2))
        assert io.parse_netlist(io.format_netlist(nl)) == nl


def test_netlist_errors():
    with pytest.raises(ValueError):
        io.parse_netlist("")
    with pytest.raises(ValueError):
        io.parse_netlist("width=2\nL: CNOT 1 2")
    with pytest.raises(IndexError):
        io.parse_netlist("width=2 ancilla_from=3\nL: CNOT 0 1")
    with pytest.raises(ValueError):
        io.parse_netlist("width=2 ancilla_from=3\nL: CNOT 1 2; CNOT 2 1")


def test_circuit_text():
    text = "CNOT 1 2\n# comment\n\nCNOT 3 1\n"
    steps = io.parse_circuit(text, 3)
    assert steps == [(0, 1), (2, 0)]
    assert io.format_circuit(steps) == "CNOT 1 2\nCNOT 3 1\n"
    with pytest.raises(IndexError):
        io.parse_circuit("CNOT 1 4", 3)
    with pytest.raises(ValueError):
        io.parse_circuit("AND 1 2", 3)


def test_schedule_json():
    data = {"steps": [[1, 5], {"random": 1, "seed": 7}, "random 2 3", None, {"erase": [8]}]}
    sched = io.schedule_from_json(data, 8)
    assert sched == [[0, 4], RandomErasure(1, 7), RandomErasure(2, 3), None, [7]]
    assert io.schedule_to_json(sched) == {
        "steps": [[1, 5], {"random": 1, "seed": 7}, {"random": 2, "seed": 3}, None, [8]]}
    with pytest.raises(IndexError):
        io.schedule_from_json([[9]], 8)
    with pytest.raises(ValueError):
        io.schedule_from_json(["random 1"], 8)


def test_bundle_roundtrip(hadamard3):
    gadget = build_encoded_cnot(hadamard3, 0, 1, certify_locality(hadamard3, 2).groups[0])
    report = certify_robust(gadget, Fraction(1, 2))
    text = io.dump_bundle(gadget, report)
    back = io.load_bundle(text)
    assert back == gadget
    data = json.loads(text)
    assert (data["control"], data["target"]) == (1, 2)
    assert data["partition"] == [[3], [4], [7], [8]]
    assert data["report"]["epsilon_dataflow"] == "1/2"
    assert data["report"]["passed"] is True


def test_simulation_json(hadamard3):
    cert = certify_locality(hadamard3, 2)
    plan = compile_circuit([(0, 1)], hadamard3, cert)
    rep = run(plan, hadamard3, BitVector(1, 3), [[3]])  # 0-based in the API
    data = json.loads(io.dump_simulation(rep))
    assert data["steps"][0]["gate"] == [1, 2]
    assert data["steps"][0]["injected"] == [4]
    assert data["width_ft"] == 12 and data["space_overhead"] == "4"
    assert data["succeeded"] is True
