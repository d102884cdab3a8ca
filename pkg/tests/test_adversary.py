import itertools

import pytest

from ftlocal.adversary import (attack_exhaustive, attack_random, attack_vertex_cover, replay,
                               run_attacks)
from ftlocal.errors import CapacityError
from ftlocal.f2core import BitVector
from ftlocal.gadgets import build_encoded_cnot, robustness_threshold, strict_budget
from ftlocal.locality import RepairGroupSet, RepairVector, certify_locality
from ftlocal.zoo import make_hadamard, small_zoo


@pytest.fixture
def full_gadget(hadamard3):
    return build_encoded_cnot(hadamard3, 0, 1, certify_locality(hadamard3, 2).groups[0])


@pytest.fixture
def single_group_gadget(hadamard3):
    pair = RepairVector(0, BitVector.from_support(8, [1, 5]))
    return build_encoded_cnot(hadamard3, 0, 1, RepairGroupSet(0, (pair,)))


@pytest.fixture
def broken_gadget(hadamard3):
    pair = RepairVector(0, BitVector.from_support(8, [1, 5]))
    return build_encoded_cnot(hadamard3, 0, 1, RepairGroupSet(0, (pair,) * 4),
                              check_disjoint=False)


def assert_replays(gadget, result, mode):
    assert result.found
    failure = replay(gadget, result.message, result.erasure, mode)
    assert failure is not None and failure.kind == result.failure_kind


@pytest.mark.parametrize("mode", ["dataflow", "blanket"])
def test_vertex_cover_on_single_group(single_group_gadget, hadamard3, mode):
    res = attack_vertex_cover(single_group_gadget, single_group_gadget.groups, mode)
    assert res.found and len(res.erasure) <= 2 < hadamard3.d
    target = set(hadamard3.row(1).support)
    assert len(target & set(res.output_erased)) >= hadamard3.d
    assert res.failure_kind == "not-decodable"
    assert_replays(single_group_gadget, res, mode)


def test_vertex_cover_out_of_budget(full_gadget):
    res = attack_vertex_cover(full_gadget, full_gadget.groups)
    # the greedy matching {4}, {1,5}, {2,6}, {3,7} covers 7 coordinates
    assert res.erasure == (1, 2, 3, 4, 5, 6, 7)
    assert res.found and not res.within_budget and not res.violates_robustness
    assert res.notes and "exceeds" in res.notes[0]


def test_vertex_cover_empty(full_gadget):
    res = attack_vertex_cover(full_gadget, RepairGroupSet(0, ()))
    assert not res.found and res.erasure == ()


def test_exhaustive_examples(full_gadget, broken_gadget):
    assert not attack_exhaustive(full_gadget, 1).found
    assert not attack_exhaustive(full_gadget, 0).found
    res = attack_exhaustive(broken_gadget, 1)
    assert res.found and len(res.erasure) == 1 and res.within_budget
    # lexicographic: the first failing set is the lowest shared query wire
    assert res.erasure == (1,) and res.message.value == 0
    assert_replays(broken_gadget, res, "dataflow")


def test_exhaustive_budget(full_gadget):
    with pytest.raises(CapacityError):
        attack_exhaustive(full_gadget, 8, budget=1000)


def test_random_attack(broken_gadget, full_gadget):
    a = attack_random(broken_gadget, 2, 1000, seed=4)
    b = attack_random(broken_gadget, 2, 1000, seed=4)
    assert a.found and a == b
    assert_replays(broken_gadget, a, "dataflow")
    assert not attack_random(full_gadget, 1, 500, seed=1).found
    with pytest.raises(ValueError):
        attack_random(full_gadget, 1, 0, seed=1)


def test_random_never_beats_exhaustive():
    code = make_hadamard(3)
    cert = certify_locality(code, 2)
    for i, j in itertools.permutations(range(3), 2):
        for r in (1, 2, 4):
            groups = RepairGroupSet(i, cert.groups[i].groups[:r])
            gadget = build_encoded_cnot(code, i, j, groups)
            for w in (1, 2):
                ex = attack_exhaustive(gadget, w)
                rnd = attack_random(gadget, w, 300, seed=r + w)
                if rnd.found:
                    assert ex.found
                    assert_replays(gadget, rnd, "dataflow")


@pytest.mark.parametrize("mode", ["dataflow", "blanket"])
def test_budget_law_and_no_false_positives(mode):
    for code in [c for c in small_zoo(4) if c.k >= 2]:
        cert = certify_locality(code, 3)
        for i, j in itertools.permutations(range(code.k), 2):
            gadget = build_encoded_cnot(code, i, j, cert.groups[i])
            budget = strict_budget(robustness_threshold(gadget, mode), code.d)
            res = run_attacks(gadget, gadget.groups, mode, max_weight=max(budget, 0))
            assert not res.violates_robustness
            if res.found:
                assert_replays(gadget, res, mode)


def test_run_attacks_order(single_group_gadget):
    res = run_attacks(single_group_gadget, single_group_gadget.groups, max_weight=2)
    assert res.strategy == "vertex-cover"
    res = run_attacks(single_group_gadget, None, max_weight=2)
    assert res.strategy == "exhaustive" and res.found


def test_run_attacks_falls_back_to_random():
    # C(64, ≤4) sets × 64 messages is above the exhaustive budget
    code = make_hadamard(6)
    g = build_encoded_cnot(code, 0, 1, certify_locality(code, 2).groups[0])
    res = run_attacks(g, None, max_weight=4, trials=50)
    assert res.strategy == "random"
