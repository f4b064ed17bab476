import itertools
from math import comb

import numpy as np
import pytest

from cubepack.errors import EnumerationRefused, InvalidParameter, UndefinedMinWeight
from cubepack.gf2_codes import (
    BinMatrix,
    BitWord,
    LinearCode,
    enumerate_codewords,
    extend_code,
    extended_hamming_code,
    hamming_code,
    hamming_parity_check,
    hamming_to_rm_permutation,
    min_weight,
    permute_code,
    reed_muller,
    rm_dimension,
    rm_plotkin_distance,
    same_code,
    subcode_of,
    verify_claimed_distance,
    weight_histogram,
)


def null_space_bruteforce(h: BinMatrix) -> set[int]:
    """Every x in {0,1}^n with h x = 0, by exhaustive search."""
    rows = h.ints()
    return {x for x in range(1 << h.ncols) if all((x & r).bit_count() % 2 == 0 for r in rows)}


def test_parity_check_k2_columns():
    h = hamming_parity_check(2)
    assert [h.column(j) for j in range(3)] == [0b10, 0b01, 0b11]  # row 0 at bit 0
    assert h.to_array().tolist() == [[0, 1, 1], [1, 0, 1]]


def test_parity_check_k3():
    h = hamming_parity_check(3)
    assert (h.nrows, h.ncols) == (3, 7)
    cols = h.to_array().T.tolist()
    assert [int("".join(map(str, c)), 2) for c in cols] == list(range(1, 8))
    assert h.rank() == 3


@pytest.mark.parametrize("k", [1, 0, -3])
def test_parity_check_rejects_small_k(k):
    with pytest.raises(InvalidParameter):
        hamming_parity_check(k)


def test_hamming_k2_is_repetition():
    c = hamming_code(2)
    assert (c.length, c.dimension, c.claimed_min_distance) == (3, 1, 3)
    assert {str(w) for w in enumerate_codewords(c)} == {"000", "111"}


@pytest.mark.parametrize("k", [2, 3, 4])
def test_hamming_equals_null_space(k):
    c = hamming_code(k)
    words = {w.value for w in enumerate_codewords(c)}
    assert words == null_space_bruteforce(hamming_parity_check(k))
    assert len(words) == 1 << c.dimension


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_hamming_orthogonal_to_parity_check(k):
    h = hamming_parity_check(k).ints()
    g = hamming_code(k).generator.ints()
    assert all((a & b).bit_count() % 2 == 0 for a in h for b in g)
    assert hamming_code(k).dimension == (1 << k) - 1 - k


def test_hamming_min_weight_3():
    assert min_weight(hamming_code(3)) == 3


def test_extend_parity_bit_last():
    c = extend_code(hamming_code(2))
    assert {str(w) for w in enumerate_codewords(c)} == {"0000", "1111"}
    odd = LinearCode(7, 1, BinMatrix((BitWord.from_str("1101000"),), 7), 3)
    assert [str(w) for w in enumerate_codewords(extend_code(odd))] == ["00000000", "11010001"]
    # weight-3 word of the canonical H(3): columns 1, 2, 3
    ext = extend_code(hamming_code(3))
    assert hamming_code(3).contains(BitWord.from_str("1110000"))
    assert ext.contains(BitWord.from_str("11100001"))
    assert not ext.contains(BitWord.from_str("11100000"))


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_extended_only_even_weights(k):
    hist = weight_histogram(extended_hamming_code(k))
    assert all(c == 0 for j, c in enumerate(hist) if j % 2)
    assert extended_hamming_code(k).claimed_min_distance == 4


def test_extended_k3():
    c = extended_hamming_code(3)
    words = list(enumerate_codewords(c))
    assert len(words) == len({w.value for w in words}) == 16
    assert {w.weight for w in words} == {0, 4, 8}
    assert min_weight(c) == 4


def test_reed_muller_parameters():
    rep = reed_muller(0, 4)
    assert {str(w) for w in enumerate_codewords(rep)} == {"0" * 16, "1" * 16}
    rm14 = reed_muller(1, 4)
    assert (rm14.length, rm14.dimension, rm14.claimed_min_distance) == (16, 5, 8)
    hist = weight_histogram(rm14)
    assert {j: c for j, c in enumerate(hist) if c} == {0: 1, 8: 30, 16: 1}
    assert (reed_muller(2, 4).dimension, reed_muller(2, 4).claimed_min_distance) == (11, 4)


@pytest.mark.parametrize("r,k", [(r, k) for k in range(1, 7) for r in range(k + 1)])
def test_rm_dimension_formula(r, k):
    assert reed_muller(r, k).dimension == sum(comb(k, i) for i in range(r + 1)) == rm_dimension(r, k)


@pytest.mark.parametrize("r,k", [(r, k) for k in range(2, 7) for r in range(k)])
def test_rm_nesting_chain(r, k):
    assert subcode_of(reed_muller(r, k), reed_muller(r + 1, k))
    assert not subcode_of(reed_muller(r + 1, k), reed_muller(r, k))


@pytest.mark.parametrize("r,k", [(r, k) for k in range(1, 7) for r in range(k + 1) if rm_dimension(r, k) <= 22])
def test_rm_min_weight(r, k):
    assert min_weight(reed_muller(r, k)) == 1 << (k - r)


def test_rm_min_weight_examples():
    assert min_weight(reed_muller(1, 5)) == 16
    assert min_weight(reed_muller(0, 4)) == 16


@pytest.mark.parametrize("r,k", [(-1, 3), (4, 3), (0, 0)])
def test_rm_rejects_bad_order(r, k):
    with pytest.raises(InvalidParameter):
        reed_muller(r, k)


def test_subcode_reflexive_and_length_mismatch():
    c = reed_muller(2, 4)
    assert subcode_of(c, c)
    with pytest.raises(InvalidParameter):
        subcode_of(reed_muller(1, 3), reed_muller(1, 4))


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_extended_hamming_is_rm_after_rotation(k):
    eh = extended_hamming_code(k)
    rm = reed_muller(k - 2, k)
    assert same_code(permute_code(eh, hamming_to_rm_permutation(k)), rm)


@pytest.mark.parametrize("k", [3, 4])
def test_extended_hamming_rm_sorted_codeword_sets(k):
    # the weaker, permutation-free invariant: identical weight profiles
    assert weight_histogram(extended_hamming_code(k)) == weight_histogram(reed_muller(k - 2, k))


def test_enumeration_refused_above_cap():
    with pytest.raises(EnumerationRefused):
        list(enumerate_codewords(reed_muller(3, 6), cap=26))  # dimension 42
    with pytest.raises(EnumerationRefused):
        enumerate_codewords(reed_muller(2, 6), cap=10)


def test_enumeration_order_is_message_counter():
    c = reed_muller(1, 3)
    words = [w.value for w in enumerate_codewords(c)]
    assert words == [c.encode(m).value for m in range(16)]


def test_enumeration_multiword_lengths():
    c = reed_muller(1, 7)  # length 128 spans two uint64 words
    hist = weight_histogram(c)
    assert {j: n for j, n in enumerate(hist) if n} == {0: 1, 64: 254, 128: 1}


def test_min_weight_zero_dimensional():
    empty = LinearCode(4, 0, BinMatrix((), 4), 1)
    with pytest.raises(UndefinedMinWeight):
        min_weight(empty)


def test_dependent_generator_rejected():
    g = BinMatrix.from_lists([[1, 1, 0], [1, 1, 0]])
    with pytest.raises(InvalidParameter):
        LinearCode(3, 2, g, 1)


def test_bitword_xor_and_weight():
    a, b = BitWord.from_str("1100"), BitWord.from_str("1010")
    assert str(a ^ b) == "0110"
    assert (a ^ b).weight == 2
    with pytest.raises(InvalidParameter):
        a ^ BitWord.from_str("101")


def test_plotkin_bound_matches_enumeration():
    for k in range(1, 7):
        for r in range(k + 1):
            assert rm_plotkin_distance(r, k) == 1 << (k - r)


def test_verify_claimed_distance_methods():
    assert verify_claimed_distance(extended_hamming_code(6)).holds is True
    assert verify_claimed_distance(extended_hamming_code(6)).method == "parity-check columns"
    ev = verify_claimed_distance(reed_muller(3, 7))
    assert (ev.holds, ev.method) == (True, "plotkin recursion")
    eh = extended_hamming_code(4)
    inflated = LinearCode(eh.length, eh.dimension, eh.generator, 6, "inflated")
    assert verify_claimed_distance(inflated).holds is False
