"""Point sets built from extended Hamming and Reed-Muller codewords.

A codeword ``v`` of a layer with exponent ``m`` generates the points whose
coordinates are ``l / 2^m`` on the support of ``v`` (``l`` odd) and 0 or 1
elsewhere.  The base construction is the layer with ``m = 1`` over the
extended Hamming code, zero codeword included; the augmentation for
dimension 16 adds ``1/4`` on the support and ``3/4`` off it.

Everything is streamed in blocks of points sharing one scale exponent so
that the million-point sets stay numpy-sized; single points are exposed
as exact :class:`DyadicPoint` values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import EnumerationRefused, InvalidParameter, MaterializationRefused
from .gf2_codes import (
    DEFAULT_ENUM_CAP,
    LinearCode,
    extended_hamming_code,
    iter_codeword_blocks,
    reed_muller,
    words_to_ints,
)
from .weight_enum import base_count, rm_min_weight_count, weights_bruteforce

DEFAULT_MAX_POINTS = 4_000_000
_EPS_CHUNK_BITS = 16


@dataclass(frozen=True)
class DyadicPoint:
    denom_exp: int
    numerators: tuple[int, ...]

    def __post_init__(self):
        if self.denom_exp < 0:
            raise InvalidParameter("denom_exp must be non-negative")
        top = 1 << self.denom_exp
        if any(not 0 <= a <= top for a in self.numerators):
            raise InvalidParameter("coordinate outside [0, 1]")

    @classmethod
    def from_fractions(cls, coords: Iterable) -> DyadicPoint:
        from fractions import Fraction

        fr = [Fraction(c) for c in coords]
        e = 0
        for f in fr:
            d = f.denominator
            if d & (d - 1):
                raise InvalidParameter(f"{f} is not dyadic")
            e = max(e, d.bit_length() - 1)
        return cls(e, tuple(int(f * (1 << e)) for f in fr))

    @property
    def dim(self) -> int:
        return len(self.numerators)

    @property
    def is_normalized(self) -> bool:
        return self.denom_exp == 0 or any(a & 1 for a in self.numerators)

    def normalized(self) -> DyadicPoint:
        e, nums = self.denom_exp, self.numerators
        while e > 0 and not any(a & 1 for a in nums):
            e -= 1
            nums = tuple(a >> 1 for a in nums)
        return DyadicPoint(e, nums)

    def scaled(self, e: int) -> tuple[int, ...]:
        """Numerators over 2^e, for e >= denom_exp."""
        if e < self.denom_exp:
            raise InvalidParameter("cannot scale to a coarser exponent")
        s = e - self.denom_exp
        return tuple(a << s for a in self.numerators)

    def coords(self):
        from fractions import Fraction

        return [Fraction(a, 1 << self.denom_exp) for a in self.numerators]


def canonical_key(p: DyadicPoint) -> bytes:
    """Injective byte encoding of a normalized point."""
    if not p.is_normalized:
        raise InvalidParameter("canonical_key needs a normalized point")
    return f"{p.denom_exp}:{','.join(map(str, p.numerators))}".encode()


def coord_dtype(scale_exp: int):
    if scale_exp <= 7:
        return np.uint8
    if scale_exp <= 15:
        return np.uint16
    if scale_exp <= 61:
        return np.int64
    raise InvalidParameter(f"scale exponent {scale_exp} too large for array storage")


@dataclass
class PointSet:
    """Points stored as numerators over a common ``2^scale_exp``."""

    dim: int
    scale_exp: int
    coords: np.ndarray

    def __post_init__(self):
        if self.coords.ndim != 2 or self.coords.shape[1] != self.dim:
            raise InvalidParameter(f"coords must have shape (N, {self.dim})")

    @classmethod
    def from_points(cls, points: Iterable[DyadicPoint], dim: int | None = None) -> PointSet:
        pts = list(points)
        if dim is None:
            if not pts:
                raise InvalidParameter("dimension of an empty point list is unknown")
            dim = pts[0].dim
        if any(p.dim != dim for p in pts):
            raise InvalidParameter("points have mixed dimensions")
        e = max((p.denom_exp for p in pts), default=0)
        arr = np.array([p.scaled(e) for p in pts], dtype=coord_dtype(e)).reshape(len(pts), dim)
        return cls(dim, e, arr)

    @classmethod
    def concat(cls, sets: Sequence[PointSet]) -> PointSet:
        if not sets:
            raise InvalidParameter("nothing to concatenate")
        e = max(s.scale_exp for s in sets)
        parts = [s.rescaled(e).coords for s in sets]
        return cls(sets[0].dim, e, np.concatenate(parts))

    def __len__(self) -> int:
        return self.coords.shape[0]

    def rescaled(self, e: int) -> PointSet:
        if e < self.scale_exp:
            raise InvalidParameter("cannot rescale to a coarser exponent")
        dt = coord_dtype(e)
        c = self.coords.astype(dt, copy=True)
        if e > self.scale_exp:
            c <<= dt(e - self.scale_exp)
        return PointSet(self.dim, e, c)

    def point(self, i: int) -> DyadicPoint:
        nums = tuple(int(a) for a in self.coords[i])
        return DyadicPoint(self.scale_exp, nums).normalized()

    def __iter__(self) -> Iterator[DyadicPoint]:
        for i in range(len(self)):
            yield self.point(i)

    def normalized_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-point reduced exponents and numerators."""
        nums = self.coords.astype(np.int64)
        exps = np.full(len(self), self.scale_exp, dtype=np.int64)
        for _ in range(self.scale_exp):
            even = (exps > 0) & np.all((nums & 1) == 0, axis=1)
            if not even.any():
                break
            nums[even] >>= 1
            exps[even] -= 1
        return exps, nums


@dataclass
class PointStream:
    """Lazily generated point set with an exactly known size."""

    dim: int
    count: int
    scale_exp: int
    _tagged_blocks: Callable[[], Iterator[tuple[int, PointSet]]] = field(repr=False)
    label: str = ""

    def tagged_blocks(self) -> Iterator[tuple[int, PointSet]]:
        """Blocks paired with the generating codeword (as an int)."""
        return self._tagged_blocks()

    def blocks(self) -> Iterator[PointSet]:
        return (b for _, b in self._tagged_blocks())

    def __iter__(self) -> Iterator[DyadicPoint]:
        for b in self.blocks():
            yield from b

    def __len__(self) -> int:
        return self.count

    def materialize(self, max_points: int | None = DEFAULT_MAX_POINTS) -> PointSet:
        if max_points is not None and self.count > max_points:
            raise MaterializationRefused(
                f"{self.label or 'point set'} has {self.count} points, above the cap of {max_points}",
                count=self.count,
            )
        e = self.scale_exp
        out = np.empty((self.count, self.dim), dtype=coord_dtype(e))
        pos = 0
        for b in self.blocks():
            n = len(b)
            if pos + n > self.count:
                raise MaterializationRefused("stream produced more points than announced")
            out[pos : pos + n] = b.rescaled(e).coords if b.scale_exp != e else b.coords
            pos += n
        if pos != self.count:
            raise InvalidParameter(f"stream produced {pos} points, expected {self.count}")
        return PointSet(self.dim, e, out)

    def __add__(self, other: PointStream) -> PointStream:
        if self.dim != other.dim:
            raise InvalidParameter("cannot chain streams of different dimensions")

        def gen():
            yield from self.tagged_blocks()
            yield from other.tagged_blocks()

        label = " + ".join(x for x in (self.label, other.label) if x)
        return PointStream(
            self.dim, self.count + other.count, max(self.scale_exp, other.scale_exp), gen, label
        )


@dataclass(frozen=True)
class LayerSpec:
    """One family of points: a code, an exponent ``m`` and odd multipliers.

    ``source`` is ``"rm"`` for RM(r, k) layers and ``"extended_hamming"``
    for the base layer, which also keeps the zero codeword (the cube
    vertices).
    """

    r: int
    k: int
    m: int
    l_values: tuple[int, ...]
    source: str = "rm"
    include_zero: bool = False

    def __post_init__(self):
        if self.k - self.r < 2 or (self.k - self.r) % 2:
            raise InvalidParameter(f"k - r must be even and >= 2, got r={self.r}, k={self.k}")
        if self.m != (self.k - self.r) // 2:
            raise InvalidParameter("m must equal (k - r) / 2")
        top = 1 << self.m
        if any(l % 2 == 0 or not 1 <= l < top for l in self.l_values):
            raise InvalidParameter(f"multipliers must be odd and in [1, {top})")
        if len(set(self.l_values)) != len(self.l_values):
            raise InvalidParameter("repeated multiplier")

    @classmethod
    def rm(cls, r: int, k: int) -> LayerSpec:
        m = (k - r) // 2
        return cls(r, k, m, tuple(range(1, 1 << m, 2)))

    @classmethod
    def base(cls, k: int) -> LayerSpec:
        return cls(k - 2, k, 1, (1,), "extended_hamming", True)

    @property
    def dim(self) -> int:
        return 1 << self.k

    @property
    def name(self) -> str:
        return "base" if self.source == "extended_hamming" else f"r={self.r}"

    def code(self) -> LinearCode:
        if self.source == "extended_hamming":
            return extended_hamming_code(self.k)
        return reed_muller(self.r, self.k)

    def points_per_codeword(self, weight: int) -> int:
        return len(self.l_values) << (self.dim - weight)


def general_orders(k: int) -> list[int]:
    """RM orders of the extra layers: r = k - 2[k/2], ..., k - 4, step 2."""
    return list(range(k - 2 * (k // 2), k - 3, 2))


def general_layers(k: int) -> list[LayerSpec]:
    return [LayerSpec.base(k)] + [LayerSpec.rm(r, k) for r in general_orders(k)]


def _codeword_points(v: int, dim: int, m: int, l_values: Sequence[int]) -> Iterator[PointSet]:
    """Points for one codeword at scale m, epsilon in binary-counter order."""
    dt = coord_dtype(m)
    support = np.array([(v >> i) & 1 for i in range(dim)], dtype=bool)
    off = np.flatnonzero(~support)
    nfree = len(off)
    shifts = np.arange(nfree - 1, -1, -1, dtype=np.uint64)
    total = 1 << nfree
    step = 1 << min(nfree, _EPS_CHUNK_BITS)
    for l in l_values:
        for start in range(0, total, step):
            rows = min(step, total - start)
            block = np.empty((rows, dim), dtype=dt)
            block[:, support] = l
            if nfree:
                c = np.arange(start, start + rows, dtype=np.uint64)
                eps = (c[:, None] >> shifts[None, :]) & np.uint64(1)
                block[:, off] = eps.astype(dt) << dt(m)
            yield PointSet(dim, m, block)


def _iter_codewords(code: LinearCode, cap: int) -> Iterator[int]:
    for block in iter_codeword_blocks(code, cap):
        yield from words_to_ints(block)


def _layer_stream(spec: LayerSpec, code: LinearCode, count: int, cap: int) -> PointStream:
    def gen():
        for v in _iter_codewords(code, cap):
            if v == 0 and not spec.include_zero:
                continue
            for b in _codeword_points(v, spec.dim, spec.m, spec.l_values):
                yield v, b

    return PointStream(spec.dim, count, spec.m, gen, spec.name)


def _check_enumerable(code: LinearCode, cap: int) -> None:
    if code.dimension > cap:
        raise EnumerationRefused(f"{code} has dimension {code.dimension} > enumeration cap {cap}")


def build_base(k: int, cap: int = DEFAULT_ENUM_CAP) -> PointStream:
    """Extended-Hamming points with value 1/2 on the support, 0/1 elsewhere.

    Yields exactly ``base_count(k)`` points.
    """
    spec = LayerSpec.base(k)
    code = spec.code()
    _check_enumerable(code, cap)
    return _layer_stream(spec, code, base_count(k), cap)


def build_augmented16() -> PointStream:
    """The 2048 points 1/4 v + 3/4 (1 - v), v in EH(16)."""
    code = extended_hamming_code(4)
    dim = code.length

    def gen():
        for block in iter_codeword_blocks(code):
            for v in words_to_ints(block):
                row = np.array([1 if (v >> i) & 1 else 3 for i in range(dim)], dtype=np.uint8)
                yield v, PointSet(dim, 2, row[None, :])

    return PointStream(dim, code.size, 2, gen, "augmented16")


def build_base_augmented16() -> PointStream:
    return build_base(4) + build_augmented16()


def layer_count(spec: LayerSpec, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Exact number of points of an RM layer, via its weight distribution."""
    hist = weights_bruteforce(spec.code(), cap)
    start = 0 if spec.include_zero else 1
    return sum(hist[w] * spec.points_per_codeword(w) for w in range(start, spec.dim + 1))


def layer_lower_count(spec: LayerSpec) -> int:
    """Points contributed by the minimum-weight codewords alone."""
    d = 1 << (spec.k - spec.r)
    return rm_min_weight_count(spec.r, spec.k) * spec.points_per_codeword(d)


def build_rm_layer(spec: LayerSpec, cap: int = DEFAULT_ENUM_CAP) -> PointStream:
    if spec.source != "rm":
        raise InvalidParameter("build_rm_layer takes an RM layer spec; use build_base for the base")
    if spec.r > spec.k - 4:
        raise InvalidParameter("the r = k - 2 layer is the base construction")
    code = spec.code()
    _check_enumerable(code, cap)
    return _layer_stream(spec, code, layer_count(spec, cap), cap)


def build_general(k: int, cap: int = DEFAULT_ENUM_CAP) -> PointStream:
    if k < 4:
        raise InvalidParameter("the layered construction needs k >= 4")
    stream = build_base(k, cap)
    for r in general_orders(k):
        stream = stream + build_rm_layer(LayerSpec.rm(r, k), cap)
    stream.label = f"general({k})"
    return stream


@dataclass(frozen=True)
class CountReport:
    total: int
    per_layer: dict[str, int]
    exact: bool

    def to_json_dict(self) -> dict:
        return {
            "total": str(self.total),
            "per_layer": {name: str(v) for name, v in self.per_layer.items()},
            "exact": self.exact,
        }


def count_general(k: int, mode: str = "exact", cap: int = DEFAULT_ENUM_CAP) -> CountReport:
    """Size of the layered construction.

    ``exact`` sums over full RM weight distributions and falls back to the
    minimum-weight count (flagging ``exact=False``) for any layer whose
    code is too large to enumerate.  ``lower`` uses only the
    minimum-weight words everywhere.
    """
    if mode not in ("exact", "lower"):
        raise InvalidParameter(f"mode must be 'exact' or 'lower', got {mode!r}")
    if k < 4:
        raise InvalidParameter("the layered construction needs k >= 4")
    per_layer = {"base": base_count(k)}
    exact = mode == "exact"
    for r in general_orders(k):
        spec = LayerSpec.rm(r, k)
        if mode == "exact" and spec.code().dimension <= cap:
            per_layer[spec.name] = layer_count(spec, cap)
        else:
            per_layer[spec.name] = layer_lower_count(spec)
            exact = False
    return CountReport(sum(per_layer.values()), per_layer, exact)


def count_construction(k: int, construction: str, mode: str = "exact", cap: int = DEFAULT_ENUM_CAP) -> CountReport:
    if construction == "base":
        return CountReport(base_count(k), {"base": base_count(k)}, True)
    if construction == "augmented16":
        if k != 4:
            raise InvalidParameter("augmented16 is defined for k = 4 only")
        aug = extended_hamming_code(4).size
        return CountReport(base_count(4) + aug, {"base": base_count(4), "augmented16": aug}, True)
    if construction == "general":
        return count_general(k, mode, cap)
    raise InvalidParameter(f"unknown construction {construction!r}")


def build_construction(k: int, construction: str, cap: int = DEFAULT_ENUM_CAP) -> PointStream:
    if construction == "base":
        return build_base(k, cap)
    if construction == "augmented16":
        if k != 4:
            raise InvalidParameter("augmented16 is defined for k = 4 only")
        return build_base_augmented16()
    if construction == "general":
        return build_general(k, cap)
    raise InvalidParameter(f"unknown construction {construction!r}")


def sample_base(k: int, count: int, seed: int) -> PointSet:
    """Uniform sample (with replacement) of base points, for any k.

    Draws a random message for the extended Hamming code and a random
    0/1 assignment, so it works even when the base set has ~10^13 points.
    """
    code = extended_hamming_code(k)
    dim = code.length
    rng = np.random.default_rng(seed)
    gen = np.array([[(row >> i) & 1 for i in range(dim)] for row in code.generator.ints()], dtype=np.uint8)
    msgs = rng.integers(0, 2, size=(count, code.dimension), dtype=np.uint8)
    support = (msgs.astype(np.int64) @ gen.astype(np.int64)) & 1
    eps = rng.integers(0, 2, size=(count, dim), dtype=np.uint8)
    coords = np.where(support == 1, 1, eps << 1).astype(np.uint8)
    return PointSet(dim, 1, coords)
