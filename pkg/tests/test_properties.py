"""Property tests for the exact arithmetic and the code/point primitives."""

from fractions import Fraction
from itertools import combinations

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from cubepack.gf2_codes import (
    BinMatrix,
    BitWord,
    LinearCode,
    extend_code,
    hamming_code,
    in_row_space,
    weight_histogram,
)
from cubepack.packing import DyadicPoint, PointSet, canonical_key
from cubepack.pointfile import read_points, write_points
from cubepack.verifier import check_no_duplicates, scaled_sqdist, verify_exhaustive, verify_sampled


@st.composite
def dyadic_points(draw, dim=None, max_exp=6):
    n = dim if dim is not None else draw(st.integers(1, 6))
    e = draw(st.integers(0, max_exp))
    nums = draw(st.lists(st.integers(0, 1 << e), min_size=n, max_size=n))
    return DyadicPoint(e, tuple(nums))


@st.composite
def point_pairs(draw):
    n = draw(st.integers(1, 6))
    return draw(dyadic_points(dim=n)), draw(dyadic_points(dim=n))


@st.composite
def point_lists(draw, min_size=2, max_size=25):
    n = draw(st.integers(1, 4))
    return draw(st.lists(dyadic_points(dim=n, max_exp=3), min_size=min_size, max_size=max_size))


def sqdist_fraction(p, q):
    return sum((a - b) ** 2 for a, b in zip(p.coords(), q.coords()))


@given(point_pairs())
def test_sqdist_matches_fractions(pq):
    p, q = pq
    sq, e = scaled_sqdist(p, q)
    assert Fraction(sq, 4**e) == sqdist_fraction(p, q)


@given(point_pairs())
def test_sqdist_symmetric(pq):
    p, q = pq
    assert scaled_sqdist(p, q) == scaled_sqdist(q, p)


@given(point_pairs())
def test_sqdist_zero_iff_same_point(pq):
    p, q = pq
    sq, _ = scaled_sqdist(p, q)
    assert (sq == 0) == (p.coords() == q.coords())


@given(point_pairs(), st.integers(0, 4))
def test_sqdist_invariant_under_refinement(pq, extra):
    p, q = pq
    fine = DyadicPoint(p.denom_exp + extra, p.scaled(p.denom_exp + extra))
    sq1, e1 = scaled_sqdist(p, q)
    sq2, e2 = scaled_sqdist(fine, q)
    assert Fraction(sq1, 4**e1) == Fraction(sq2, 4**e2)


@given(dyadic_points(), st.integers(0, 4))
def test_normalization_is_canonical(p, extra):
    fine = DyadicPoint(p.denom_exp + extra, p.scaled(p.denom_exp + extra))
    a, b = p.normalized(), fine.normalized()
    assert a == b
    assert a.is_normalized
    assert a.coords() == p.coords()
    assert canonical_key(a) == canonical_key(b)


@given(dyadic_points(dim=3), dyadic_points(dim=3))
def test_canonical_key_injective(p, q):
    same = p.coords() == q.coords()
    assert (canonical_key(p.normalized()) == canonical_key(q.normalized())) == same


@given(dyadic_points())
def test_from_fractions_round_trip(p):
    assert DyadicPoint.from_fractions(p.coords()) == p.normalized()


@given(st.integers(1, 40).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(0, (1 << n) - 1), st.integers(0, (1 << n) - 1))))
def test_bitword_xor(args):
    n, a, b = args
    x, y = BitWord(a, n), BitWord(b, n)
    z = x ^ y
    assert z.weight == x.weight + y.weight - 2 * bin(a & b).count("1")
    assert (z ^ y) == x
    assert set(z.support()) == set(x.support()) ^ set(y.support())


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 7), st.data())
def test_extended_code_weights_even(n, data):
    rows = data.draw(st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=4))
    basis = []
    for r in rows:
        if not in_row_space(r, basis):
            basis.append(r)
    code = LinearCode(n, len(basis), BinMatrix.from_ints(basis, n), 1)
    ext = extend_code(code)
    hist = weight_histogram(ext)
    assert sum(hist) == code.size
    assert all(c == 0 for w, c in enumerate(hist) if w % 2)


@settings(max_examples=5, deadline=None)
@given(st.integers(2, 5))
def test_codewords_closed_under_xor(k):
    h = hamming_code(k)
    words = list(h.encode(m) for m in range(min(h.size, 64)))
    for a, b in combinations(words[:12], 2):
        assert h.contains(a ^ b)


@settings(max_examples=40, deadline=None)
@given(point_lists())
def test_exhaustive_min_matches_oracle(pts):
    ps = PointSet.from_points(pts)
    rep = verify_exhaustive(ps)
    best = min(sqdist_fraction(p, q) for p, q in combinations(pts, 2))
    assert rep.min_sq_distance == best
    assert rep.passed == (best >= 1)
    i, j = rep.argmin_pair
    assert i < j and sqdist_fraction(pts[i], pts[j]) == best


@settings(max_examples=40, deadline=None)
@given(point_lists(min_size=1))
def test_duplicate_count_matches_key_set(pts):
    ps = PointSet.from_points(pts)
    keys = {canonical_key(p.normalized()) for p in pts}
    assert check_no_duplicates(ps) == len(pts) - len(keys)
    assert check_no_duplicates(iter(pts)) == len(pts) - len(keys)


@settings(max_examples=25, deadline=None)
@given(point_lists(min_size=1))
def test_point_file_round_trip(tmp_path_factory, pts):
    path = tmp_path_factory.mktemp("rt") / "pts.txt"
    ps = PointSet.from_points(pts)
    write_points(path, ps)
    back = read_points(path)
    assert [p.coords() for p in back] == [p.coords() for p in pts]


@settings(max_examples=10, deadline=None)
@given(point_lists(min_size=3), st.integers(0, 2**32), st.integers(2, 4))
def test_sampled_independent_of_workers(pts, seed, workers):
    ps = PointSet.from_points(pts)
    a = verify_sampled(ps, 300_000, seed)
    b = verify_sampled(ps, 300_000, seed, workers=workers)
    assert a == b
    assert a.min_sq_distance >= verify_exhaustive(ps).min_sq_distance
