"""Exact pairwise-distance checks and the structural certificate.

Distances are compared through integers only: two points scaled to a
common ``2^E`` are at distance >= 1 exactly when the sum of squared
numerator differences is >= ``4^E``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidParameter, MaterializationRefused, VerificationRefused
from .gf2_codes import DEFAULT_ENUM_CAP, LinearCode, extended_hamming_code, subcode_of, verify_claimed_distance
from .packing import DyadicPoint, LayerSpec, PointSet, canonical_key, general_layers

EXHAUSTIVE_MAX_POINTS = 50_000
SAMPLE_CHUNK = 1 << 17
_BLOCK_ENTRIES = 1 << 22


def scaled_sqdist(p: DyadicPoint, q: DyadicPoint) -> tuple[int, int]:
    if p.dim != q.dim:
        raise InvalidParameter(f"dimension mismatch: {p.dim} vs {q.dim}")
    e = max(p.denom_exp, q.denom_exp)
    return sum((a - b) ** 2 for a, b in zip(p.scaled(e), q.scaled(e))), e


@dataclass(frozen=True)
class DistanceReport:
    mode: str
    pairs_checked: int
    min_scaled_sq: int | None
    scale_exp: int
    argmin_pair: tuple[int, int] | None
    passed: bool
    seed: int | None = None

    @property
    def min_sq_distance(self) -> Fraction | None:
        if self.min_scaled_sq is None:
            return None
        return Fraction(self.min_scaled_sq, 1 << (2 * self.scale_exp))

    def to_json_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "pairs_checked": self.pairs_checked,
            "scale_exp": self.scale_exp,
            "min_scaled_sq": None if self.min_scaled_sq is None else str(self.min_scaled_sq),
            "argmin": None if self.argmin_pair is None else list(self.argmin_pair),
            "passed": self.passed,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def _as_pointset(points) -> PointSet:
    if isinstance(points, PointSet):
        return points
    return PointSet.from_points(points)


def _work_dtype(dim: int, e: int):
    """Smallest signed dtype that holds dim * 4^e exactly, or object."""
    bound = dim << (2 * e)
    for dt in (np.int16, np.int32, np.int64):
        if bound < np.iinfo(dt).max:
            return dt
    return object


def _common(a: PointSet, b: PointSet) -> tuple[np.ndarray, np.ndarray, int]:
    if a.dim != b.dim:
        raise InvalidParameter(f"dimension mismatch: {a.dim} vs {b.dim}")
    e = max(a.scale_exp, b.scale_exp)
    dt = _work_dtype(a.dim, e)
    return a.rescaled(e).coords.astype(dt), b.rescaled(e).coords.astype(dt), e


def _report(mode, pairs, best, e, argmin, seed=None) -> DistanceReport:
    passed = best is None or best >= 1 << (2 * e)
    return DistanceReport(mode, pairs, best, e, argmin, passed, seed)


def verify_exhaustive(points, max_points: int = EXHAUSTIVE_MAX_POINTS) -> DistanceReport:
    """Check every unordered pair; the argmin is the lexicographically first."""
    ps = _as_pointset(points)
    n = len(ps)
    if n > max_points:
        raise VerificationRefused(f"{n} points is above the exhaustive limit of {max_points}")
    a, _, e = _common(ps, ps)
    best, argmin = None, None
    if n >= 2:
        norms = (a.astype(np.int64) ** 2).sum(axis=1) if a.dtype != object else (a * a).sum(axis=1)
        rows = max(1, _BLOCK_ENTRIES // n)
        for s in range(0, n - 1, rows):
            t = min(n - 1, s + rows)
            blk = a[s:t]
            if a.dtype == object:
                d = ((blk[:, None, :] - a[None, :, :]) ** 2).sum(axis=2)
            else:
                gram = blk.astype(np.int64) @ a.T.astype(np.int64)
                d = norms[s:t, None] + norms[None, :] - 2 * gram
            ii = np.arange(s, t)[:, None]
            jj = np.arange(n)[None, :]
            big = np.int64(np.iinfo(np.int64).max) if a.dtype != object else float("inf")
            d = np.where(jj > ii, d, big)
            pos = int(np.argmin(d))
            val = d.flat[pos]
            if best is None or val < best:
                best, argmin = int(val), (s + pos // n, pos % n)
    return _report("exhaustive", n * (n - 1) // 2, best, e, argmin)


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chunk,)))


def _sampled_min(a, b, same: bool, num_pairs: int, seed: int, workers: int):
    na, nb = len(a), len(b)
    nchunks = (num_pairs + SAMPLE_CHUNK - 1) // SAMPLE_CHUNK

    def run(c):
        size = min(SAMPLE_CHUNK, num_pairs - c * SAMPLE_CHUNK)
        rng = _chunk_rng(seed, c)
        i = rng.integers(0, na, size=size)
        if same:
            j = rng.integers(0, na - 1, size=size)
            j += j >= i
        else:
            j = rng.integers(0, nb, size=size)
        diff = a[i] - b[j]
        d = (diff * diff).sum(axis=1)
        pos = int(np.argmin(d))
        return int(d[pos]), int(i[pos]), int(j[pos])

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(run, range(nchunks)))
    else:
        results = [run(c) for c in range(nchunks)]
    # first chunk attaining the minimum wins, independent of worker count
    best = min(results, key=lambda r: r[0])
    return best[0], (best[1], best[2])


def verify_sampled(points, num_pairs: int, seed: int, workers: int = 1) -> DistanceReport:
    """Check ``num_pairs`` seeded random pairs of distinct indices.

    Pairs are drawn in fixed-size chunks, chunk ``c`` from its own child
    seed, so the report does not depend on ``workers``.
    """
    if num_pairs < 1:
        raise InvalidParameter("num_pairs must be at least 1")
    ps = _as_pointset(points)
    if len(ps) < 2:
        raise InvalidParameter("need at least two points to sample pairs")
    a, _, e = _common(ps, ps)
    best, (i, j) = _sampled_min(a, a, True, num_pairs, seed, workers)
    return _report("sampled", num_pairs, best, e, (min(i, j), max(i, j)), seed)


def verify_sampled_between(first, second, num_pairs: int, seed: int, workers: int = 1) -> DistanceReport:
    """Like verify_sampled, with one index from each set."""
    if num_pairs < 1:
        raise InvalidParameter("num_pairs must be at least 1")
    pa, pb = _as_pointset(first), _as_pointset(second)
    if not len(pa) or not len(pb):
        raise InvalidParameter("both point sets must be non-empty")
    a, b, e = _common(pa, pb)
    best, argmin = _sampled_min(a, b, False, num_pairs, seed, workers)
    return _report("sampled-between", num_pairs, best, e, argmin, seed)


def verify_between_exhaustive(first, second, workers: int = 1) -> DistanceReport:
    """Every pair (x, y) with x in ``first`` and y in ``second``.

    Sized for the 2048 x 1351361 augmentation cross-check: iterates over
    ``first`` and compares each point with all of ``second`` at once.
    """
    pa, pb = _as_pointset(first), _as_pointset(second)
    a, b, e = _common(pa, pb)
    if a.dtype == object:
        raise VerificationRefused("coordinates too fine for the vectorized cross-check")

    cols = np.ascontiguousarray(b.T)

    def run(rng_):
        best = None
        for i in rng_:
            d = np.zeros(len(b), dtype=a.dtype)
            for c, x in enumerate(cols):
                diff = x - a[i, c]
                d += diff * diff
            j = int(np.argmin(d))
            if best is None or d[j] < best[0]:
                best = (int(d[j]), i, j)
        return best

    n = len(a)
    bounds = np.linspace(0, n, max(1, workers) + 1, dtype=int)
    parts = [range(bounds[w], bounds[w + 1]) for w in range(len(bounds) - 1)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = [r for r in pool.map(run, parts) if r]
    else:
        results = [r for r in map(run, parts) if r]
    best = min(results, key=lambda r: r[0])
    return _report("between-exhaustive", n * len(b), best[0], e, (best[1], best[2]))


# Duplicates


def _packed_columns(coords: np.ndarray, scale_exp: int) -> list[np.ndarray]:
    bits = scale_exp + 1
    per = 64 // bits
    cols = []
    for s in range(0, coords.shape[1], per):
        acc = np.zeros(coords.shape[0], dtype=np.uint64)
        for t in range(s, min(s + per, coords.shape[1])):
            acc = (acc << np.uint64(bits)) | coords[:, t].astype(np.uint64)
        cols.append(acc)
    return cols


def check_no_duplicates(points, max_points: int | None = None) -> int:
    """Number of points whose canonical key repeats an earlier one."""
    if isinstance(points, PointSet):
        n = len(points)
        if max_points is not None and n > max_points:
            raise MaterializationRefused(f"{n} points above the cap of {max_points}", count=n)
        if n < 2:
            return 0
        if points.scale_exp > 61:
            return n - len(np.unique(points.coords, axis=0))
        cols = _packed_columns(points.coords, points.scale_exp)
        order = np.lexsort(cols[::-1])
        same = np.ones(n - 1, dtype=bool)
        for c in cols:
            sc = c[order]
            same &= sc[1:] == sc[:-1]
        return int(same.sum())
    seen: set[bytes] = set()
    dups = 0
    for i, p in enumerate(points):
        if max_points is not None and i >= max_points:
            raise MaterializationRefused(f"more than {max_points} points")
        key = canonical_key(p.normalized())
        if key in seen:
            dups += 1
        else:
            seen.add(key)
    return dups


# Structural certificate


@dataclass(frozen=True)
class Family:
    """A point family as seen by the certificate.

    ``full_cover`` marks families whose points are non-integer in every
    coordinate (the dimension-16 augmentation); otherwise only the support
    of the codeword carries the odd multiples of 2^-m.
    """

    name: str
    m: int
    code: LinearCode
    l_values: tuple[int, ...]
    include_zero: bool = False
    full_cover: bool = False

    @classmethod
    def from_layer(cls, spec: LayerSpec, code: LinearCode | None = None) -> Family:
        return cls(spec.name, spec.m, code or spec.code(), spec.l_values, spec.include_zero)

    @classmethod
    def augmented16(cls) -> Family:
        return cls("augmented16", 2, extended_hamming_code(4), (1, 3), full_cover=True)


@dataclass(frozen=True)
class CertificateCase:
    name: str
    verified: bool | None
    lhs: Fraction | None = None
    witness: dict = field(default_factory=dict)

    @property
    def margin(self) -> Fraction | None:
        return None if self.lhs is None else self.lhs - 1

    def to_json_dict(self) -> dict:
        return {
            "case": self.name,
            "verified": self.verified,
            "lhs": None if self.lhs is None else str(self.lhs),
            "margin": None if self.margin is None else str(self.margin),
            "witness": self.witness,
        }


@dataclass(frozen=True)
class CertificateReport:
    cases: tuple[CertificateCase, ...]

    @property
    def overall(self) -> bool:
        return all(c.verified is True for c in self.cases)

    @property
    def complete(self) -> bool:
        return all(c.verified is not None for c in self.cases)

    def case(self, prefix: str) -> list[CertificateCase]:
        return [c for c in self.cases if c.name.startswith(prefix)]

    def to_json_dict(self) -> dict:
        return {
            "mode": "structural",
            "overall": self.overall,
            "complete": self.complete,
            "cases": [c.to_json_dict() for c in self.cases],
        }


def _ineq(name, count: int, gap: Fraction, **witness) -> CertificateCase:
    """``count`` coordinates each differing by at least ``gap``: count*gap^2 >= 1."""
    lhs = count * gap * gap
    w = {"coords": count, "gap": str(gap), **witness}
    return CertificateCase(name, lhs >= 1, lhs, w)


def certify_families(families: Sequence[Family], cap: int = DEFAULT_ENUM_CAP) -> CertificateReport:
    """Pairwise distance >= 1 across the union of the given families.

    Case labels: (a) same codeword and multiplier, different 0/1 part;
    (a') same codeword, different multipliers; (b) families with different
    exponents; (c) different codewords of one family; (d) the augmentation.
    """
    cases: list[CertificateCase] = []
    dist: dict[str, int] = {}
    for f in families:
        ev = verify_claimed_distance(f.code, cap)
        cases.append(
            CertificateCase(
                f"min distance {f.name}: {f.code}",
                ev.holds,
                None,
                {"claimed": ev.claimed, "method": ev.method, "detail": ev.detail},
            )
        )
        dist[f.name] = f.code.claimed_min_distance
        top = 1 << f.m
        cases.append(
            CertificateCase(
                f"range {f.name}: coordinates in [0, 1]",
                all(1 <= l < top for l in f.l_values),
                None,
                {"l_values": list(f.l_values), "denominator": top},
            )
        )

    for f in families:
        d, step = dist[f.name], Fraction(1, 1 << f.m)
        if f.full_cover:
            # 1/4 vs 3/4 wherever two codewords differ
            cases.append(_ineq(f"(d) {f.name}: different codewords", d, Fraction(1, 2), m=f.m, d=d))
            continue
        cases.append(_ineq(f"(a) {f.name}: same codeword, different 0/1 part", 1, Fraction(1)))
        if len(f.l_values) > 1:
            cases.append(_ineq(f"(a') {f.name}: same codeword, different l", d, 2 * step, m=f.m, d=d))
        cases.append(_ineq(f"(c) {f.name}: different codewords", d, step, m=f.m, d=d))

    for i, f in enumerate(families):
        for g in families[i + 1 :]:
            label = f"{f.name} vs {g.name}"
            if f.m != g.m:
                hi, lo = (f, g) if f.m > g.m else (g, f)
                cover = hi.code.length if hi.full_cover else dist[hi.name]
                cases.append(
                    _ineq(f"(b) {label}: exponents {hi.m} > {lo.m}", cover, Fraction(1, 1 << hi.m), m1=hi.m, m2=lo.m)
                )
                if hi.include_zero:
                    cover_lo = lo.code.length if lo.full_cover else dist[lo.name]
                    cases.append(_ineq(f"(b) {label}: vertices vs {lo.name}", cover_lo, Fraction(1, 1 << lo.m)))
                continue
            # same exponent: only nested codes on the same coordinates are handled
            if f.full_cover or g.full_cover or f.code.length != g.code.length:
                cases.append(CertificateCase(f"(c) {label}: same exponent {f.m}", None, None, {"reason": "no argument available"}))
                continue
            if subcode_of(f.code, g.code):
                big = g
            elif subcode_of(g.code, f.code):
                big = f
            else:
                cases.append(CertificateCase(f"(c) {label}: codes not nested", None, None, {}))
                continue
            d = dist[big.name]
            step = Fraction(1, 1 << f.m)
            cases.append(_ineq(f"(c) {label}: different codewords in {big.code}", d, step, m=f.m, d=d))
            shared = set(f.l_values) & set(g.l_values)
            cases.append(
                CertificateCase(
                    f"(a') {label}: shared codewords use disjoint l",
                    not shared,
                    None,
                    {"shared_l": sorted(shared)},
                )
            )
            if not shared:
                cases.append(_ineq(f"(a') {label}: same codeword, different l", d, 2 * step, m=f.m, d=d))
    return CertificateReport(tuple(cases))


def structural_families(k: int, construction: str) -> list[Family]:
    if construction == "base":
        return [Family.from_layer(LayerSpec.base(k))]
    if construction == "augmented16":
        if k != 4:
            raise InvalidParameter("augmented16 is defined for k = 4 only")
        return [Family.from_layer(LayerSpec.base(4)), Family.augmented16()]
    if construction == "general":
        return [Family.from_layer(s) for s in general_layers(k)]
    raise InvalidParameter(f"unknown construction {construction!r}")


def verify_structural(
    k: int, layers: Iterable[LayerSpec | Family] | str = "base", cap: int = DEFAULT_ENUM_CAP
) -> CertificateReport:
    """Certificate for a construction name or an explicit list of layers."""
    if isinstance(layers, str):
        families = structural_families(k, layers)
    else:
        families = [x if isinstance(x, Family) else Family.from_layer(x) for x in layers]
    for f in families:
        if f.code.length != 1 << k:
            raise InvalidParameter(f"{f.name} has length {f.code.length}, expected {1 << k}")
    return certify_families(families, cap)
