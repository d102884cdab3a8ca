import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ftlocal.errors import CapacityError, CorruptionError, DimensionError
from ftlocal.f2core import (NOT_DECODABLE, BitVector, ErasureWord, LinearCode,
                            distance_bruteforce, encode, erase, gf2_rank, ideal_decode,
                            inner_product, is_decodable, spot_check_distance)
from ftlocal.zoo import make_hadamard, make_repetition, small_zoo

from conftest import all_messages, brute_force_decode, brute_force_distance, random_code, subsets


def test_encode_repetition(rep3):
    assert str(encode(rep3, BitVector.from_string("1"))) == "111"


@pytest.mark.parametrize("code", small_zoo(), ids=str)
def test_encode_zero(code):
    assert encode(code, BitVector.zeros(code.k)) == BitVector.zeros(code.n)


def test_encode_hadamard_first_row(hadamard3):
    # x -> x_1 over x = 000, 001, ..., 111
    expected = [x >> 2 & 1 for x in range(8)]
    assert encode(hadamard3, BitVector.from_string("100")).bits == tuple(expected)
    assert str(encode(hadamard3, BitVector.from_string("100"))) == "00001111"


def test_encode_length_mismatch(hadamard3):
    with pytest.raises(DimensionError):
        encode(hadamard3, BitVector.from_string("10"))


@pytest.mark.parametrize("code", [c for c in small_zoo() if c.k <= 10], ids=str)
def test_linearity_exhaustive(code):
    msgs = all_messages(code.k)
    for a, b in itertools.product(msgs, repeat=2):
        assert encode(code, a ^ b) == encode(code, a) ^ encode(code, b)


def test_distance_examples(rep3, hadamard3):
    assert distance_bruteforce(rep3) == 3
    assert distance_bruteforce(hadamard3) == 4
    parity = LinearCode.from_generator(["101", "011"])
    assert distance_bruteforce(parity) == 2
    # oracle: the three nonzero codewords 101, 011, 110
    assert sorted(BitVector(parity.encode_int(m), 3).weight for m in (1, 2, 3)) == [2, 2, 2]


def test_hadamard_all_nonzero_weights_are_four(hadamard3):
    assert {hadamard3.encode_int(m).bit_count() for m in range(1, 8)} == {4}


def test_distance_cap():
    code = random_code(random.Random(1), 30, 21)
    with pytest.raises(CapacityError):
        distance_bruteforce(code)


def test_distance_matches_oracle_on_random_codes():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(4, 70)
        k = rng.randint(1, min(n, 9))
        code = random_code(rng, n, k)
        assert distance_bruteforce(code) == brute_force_distance(code)


def test_spot_check_distance(hadamard3):
    assert spot_check_distance(hadamard3, samples=2000) is None
    lying = hadamard3.with_distance(5)
    bad = spot_check_distance(lying, samples=2000)
    assert bad is not None and bad.weight == 4


def test_erase_examples():
    assert str(erase(BitVector.from_string("111"), [0])) == "?11"
    w = BitVector.from_string("00001111")
    assert str(erase(w, [])) == "00001111"
    assert str(erase(w, [0, 4])) == "?000?111"


def test_erase_out_of_range():
    with pytest.raises(IndexError):
        erase(BitVector.from_string("111"), [3])


def test_erasure_word_roundtrip():
    word = ErasureWord.from_string("1?0?1")
    assert word.erased_set == {1, 3}
    assert word.symbols == (1, None, 0, None, 1)
    assert str(word) == "1?0?1"
    assert ErasureWord.from_symbols(word.symbols) == word


def test_decode_repetition(rep3):
    assert str(ideal_decode(rep3, ErasureWord.from_string("?1?"))) == "1"


def test_decode_hadamard_codeword_support_not_decodable(hadamard3):
    word = erase(encode(hadamard3, BitVector.from_string("110")), hadamard3.row(0).support)
    assert ideal_decode(hadamard3, word) is NOT_DECODABLE


def test_decode_hadamard_three_erasures(hadamard3):
    for m in all_messages(3):
        for E in itertools.combinations(range(8), 3):
            assert ideal_decode(hadamard3, erase(encode(hadamard3, m), E)) == m


def test_decode_detects_corruption(rep3):
    with pytest.raises(CorruptionError):
        ideal_decode(rep3, ErasureWord.from_string("10?"))


def test_inner_product_examples(hadamard3):
    assert inner_product(BitVector.from_string("110"), BitVector.from_string("101")) == 1
    assert inner_product(BitVector.zeros(3), BitVector.from_string("111")) == 0
    u = BitVector.from_support(8, [0, 4])  # x = 000 and x = 100
    for m in all_messages(3):
        assert inner_product(u, encode(hadamard3, m)) == m[0]


def test_inner_product_length_mismatch():
    with pytest.raises(DimensionError):
        inner_product(BitVector.zeros(2), BitVector.zeros(3))


@pytest.mark.parametrize("code", [c for c in small_zoo() if c.n <= 16], ids=str)
def test_decoder_soundness_exhaustive(code):
    d = distance_bruteforce(code)
    words = [(m, encode(code, m)) for m in all_messages(code.k)]
    for E in subsets(code.n, d - 1):
        for m, cw in words:
            assert ideal_decode(code, erase(cw, E)) == m


@pytest.mark.parametrize("code", [c for c in small_zoo() if c.n <= 12], ids=str)
def test_decoder_completeness_exhaustive(code):
    # NotDecodable exactly when some nonzero codeword sits inside E
    words = [code.encode_int(m) for m in range(1, 1 << code.k)]
    for E in subsets(code.n, code.n):
        mask = sum(1 << t for t in E)
        inside = any(w & ~mask == 0 for w in words)
        got = ideal_decode(code, ErasureWord(0, mask, code.n))
        assert (got is NOT_DECODABLE) == inside
        assert is_decodable(code, mask) == (not inside)


@pytest.mark.parametrize("code", [c for c in small_zoo() if c.n <= 16], ids=str)
def test_distance_is_decoder_boundary(code):
    d = distance_bruteforce(code)
    assert any(not is_decodable(code, sum(1 << t for t in E))
               for E in itertools.combinations(range(code.n), d))


def test_decoder_matches_brute_force_on_noisy_words():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(3, 10)
        code = random_code(rng, n, rng.randint(1, n))
        word = ErasureWord(rng.getrandbits(n), rng.getrandbits(n), n)
        oracle = brute_force_decode(code, word)
        if oracle == "corrupt":
            with pytest.raises(CorruptionError):
                ideal_decode(code, word)
        elif oracle == "ambiguous":
            assert ideal_decode(code, word) is NOT_DECODABLE
        else:
            assert ideal_decode(code, word).value == oracle


def test_code_rejects_dependent_rows():
    with pytest.raises(ValueError):
        LinearCode.from_generator(["110", "011", "101"])
    with pytest.raises(ValueError):
        LinearCode.from_generator(["000"])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=2 ** 12 - 1), min_size=1, max_size=8))
def test_rank_bounds(rows):
    r = gf2_rank(rows)
    assert 0 <= r <= min(len(rows), 12)
    assert gf2_rank(rows + [rows[0] ^ rows[-1]]) == r
