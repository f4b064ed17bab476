import itertools
from fractions import Fraction

import numpy as np
import pytest

from cubepack.errors import InvalidParameter, VerificationRefused
from cubepack.gf2_codes import LinearCode, extended_hamming_code
from cubepack.packing import DyadicPoint, LayerSpec, PointSet, build_augmented16, build_base, build_general
from cubepack.verifier import (
    Family,
    check_no_duplicates,
    scaled_sqdist,
    verify_between_exhaustive,
    verify_exhaustive,
    verify_sampled,
    verify_sampled_between,
    verify_structural,
)


def min_sq_oracle(points):
    """Smallest squared distance over all pairs, in Fractions."""
    coords = [p.coords() for p in points]
    return min(sum((a - b) ** 2 for a, b in zip(x, y)) for x, y in itertools.combinations(coords, 2))


def test_scaled_sqdist_examples():
    p = DyadicPoint(0, (0, 0, 0, 0))
    assert scaled_sqdist(p, p) == (0, 0)
    assert scaled_sqdist(p, DyadicPoint(1, (1, 1, 1, 1))) == (4, 1)
    assert scaled_sqdist(DyadicPoint(2, (1,) * 16), DyadicPoint(2, (3,) * 16)) == (64, 2)
    with pytest.raises(InvalidParameter):
        scaled_sqdist(p, DyadicPoint(0, (0, 0)))


@pytest.mark.parametrize("k", [2, 3])
def test_exhaustive_base(k):
    pts = build_base(k).materialize()
    rep = verify_exhaustive(pts)
    assert rep.passed
    assert rep.min_scaled_sq == 1 << (2 * rep.scale_exp)
    assert rep.pairs_checked == len(pts) * (len(pts) - 1) // 2
    assert rep.min_sq_distance == min_sq_oracle(list(pts)) == 1


def test_exhaustive_argmin_is_a_minimizing_pair():
    pts = build_base(3).materialize()
    rep = verify_exhaustive(pts)
    i, j = rep.argmin_pair
    assert i < j
    sq, e = scaled_sqdist(pts.point(i), pts.point(j))
    assert Fraction(sq, 4**e) == rep.min_sq_distance


def test_exhaustive_duplicate_fails():
    p = DyadicPoint(1, (1, 0, 2))
    rep = verify_exhaustive([p, p])
    assert not rep.passed and rep.min_scaled_sq == 0


def test_exhaustive_guard():
    big = PointSet(2, 0, np.zeros((50_001, 2), dtype=np.uint8))
    with pytest.raises(VerificationRefused):
        verify_exhaustive(big)


def test_exhaustive_matches_oracle_on_random_sets():
    rng = np.random.default_rng(3)
    for _ in range(5):
        coords = rng.integers(0, 9, size=(40, 5)).astype(np.uint8)
        ps = PointSet(5, 3, coords)
        rep = verify_exhaustive(ps)
        assert rep.min_sq_distance == min_sq_oracle(list(ps))


def test_sampled_deterministic_and_worker_independent():
    pts = build_base(4).materialize()
    a = verify_sampled(pts, 300_000, seed=5)
    b = verify_sampled(pts, 300_000, seed=5, workers=3)
    assert a == b
    assert a.passed and a.seed == 5
    assert verify_sampled(pts, 300_000, seed=6).argmin_pair != a.argmin_pair


def test_sampled_never_below_exhaustive():
    pts = build_base(3).materialize()
    ex = verify_exhaustive(pts)
    for seed in range(3):
        s = verify_sampled(pts, 5000, seed)
        assert s.min_scaled_sq >= ex.min_scaled_sq


def test_sampled_catches_planted_violation():
    base = build_base(2).materialize()
    bad = PointSet.concat([base, PointSet.from_points([DyadicPoint(2, (1, 1, 1, 1))])])
    rep = verify_sampled(bad, 20_000, seed=1)
    assert not rep.passed
    assert 17 in rep.argmin_pair


def test_sampled_needs_two_points():
    with pytest.raises(InvalidParameter):
        verify_sampled([DyadicPoint(0, (0, 1))], 10, seed=0)
    with pytest.raises(InvalidParameter):
        verify_sampled(build_base(2).materialize(), 0, seed=0)


def test_between_checks():
    aug = build_augmented16().materialize()
    base = build_base(4).materialize()
    head = PointSet(16, aug.scale_exp, aug.coords[:8])
    rep = verify_between_exhaustive(head, base)
    assert rep.passed and rep.pairs_checked == 8 * len(base)
    assert rep.min_scaled_sq == 16  # distance exactly 1
    s = verify_sampled_between(aug, base, 10_000, seed=2)
    assert s.passed and s == verify_sampled_between(aug, base, 10_000, seed=2, workers=2)


def test_duplicates():
    b3 = build_base(3).materialize()
    assert check_no_duplicates(b3) == 0
    b2 = build_base(2).materialize()
    assert check_no_duplicates(PointSet.concat([b2, b2])) == 17
    assert check_no_duplicates(list(b2) + list(b2)) == 17
    assert check_no_duplicates(build_general(4).materialize()) == 0
    # same point under two representations
    assert check_no_duplicates([DyadicPoint(1, (2, 0)), DyadicPoint(0, (1, 0))]) == 1


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_structural_base(k):
    cert = verify_structural(k, "base")
    assert cert.overall and cert.complete


def test_structural_k3_tight():
    cert = verify_structural(3, "base")
    (c,) = cert.case("(c)")
    assert c.lhs == 1 and c.margin == 0


def test_structural_k5_layers_tight():
    cert = verify_structural(5, [LayerSpec.rm(1, 5), LayerSpec.base(5)])
    assert cert.overall
    (b,) = cert.case("(b)")
    assert b.lhs == 1 and b.witness["m1"] == 2


@pytest.mark.parametrize("k", [4, 5, 6])
def test_structural_general(k):
    assert verify_structural(k, "general").overall


def test_structural_augmented():
    cert = verify_structural(4, "augmented16")
    assert cert.overall
    assert cert.case("(d)")[0].lhs == 1


def test_structural_falsified_distance_fails():
    eh = extended_hamming_code(4)
    weak = LinearCode(eh.length, eh.dimension, eh.generator, 2, "EH(4) claimed 2")
    fam = Family.from_layer(LayerSpec.base(4), code=weak)
    cert = verify_structural(4, [fam])
    assert not cert.overall
    (c,) = cert.case("(c)")
    assert not c.verified and c.lhs == Fraction(1, 2)


def test_structural_inflated_claim_is_refuted():
    eh = extended_hamming_code(4)
    strong = LinearCode(eh.length, eh.dimension, eh.generator, 6, "EH(4) claimed 6")
    cert = verify_structural(4, [Family.from_layer(LayerSpec.base(4), code=strong)])
    assert not cert.overall
    assert cert.cases[0].verified is False


def test_structural_incomplete_is_not_a_pass():
    aug = Family.augmented16()
    r0 = Family.from_layer(LayerSpec.rm(0, 4))
    cert = verify_structural(4, [aug, r0])
    assert not cert.complete and not cert.overall
