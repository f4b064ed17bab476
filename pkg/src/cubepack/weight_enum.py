"""Exact weight distributions and the point-count formulas built on them.

Two lengths appear side by side here and are never conflated:
``code_len = 2^k - 1`` for the Hamming code and ``dim = 2^k`` for its
extension (which is also the cube dimension).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import InternalConsistencyFailure, InvalidParameter
from .gf2_codes import DEFAULT_ENUM_CAP, LinearCode, weight_histogram


@dataclass(frozen=True)
class WeightDistribution:
    length: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.length + 1:
            raise InvalidParameter("counts must have length + 1 entries")
        if any(c < 0 for c in self.counts):
            raise InvalidParameter("negative weight count")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, j: int) -> int:
        return self.counts[j] if 0 <= j <= self.length else 0

    def __iter__(self):
        return iter(self.counts)

    def nonzero(self) -> dict[int, int]:
        return {j: c for j, c in enumerate(self.counts) if c}

    def as_list(self) -> list[int]:
        return list(self.counts)


class IntPolynomial:
    """Dense polynomial with exact integer coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int]):
        c = [int(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        self.coeffs = c or [0]

    @classmethod
    def binomial_power(cls, a: int, b: int, e: int, step: int = 1) -> IntPolynomial:
        """(a + b x^step)^e expanded."""
        c = [0] * (step * e + 1)
        for i in range(e + 1):
            c[step * i] = comb(e, i) * a ** (e - i) * b**i
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j: int) -> int:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial([self[i] + other[i] for i in range(n)])

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + other.scale(-1)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"IntPolynomial({self.coeffs})"

    def scale(self, s: int) -> IntPolynomial:
        return IntPolynomial([s * a for a in self.coeffs])

    def shift(self, s: int = 1) -> IntPolynomial:
        """Multiply by x^s."""
        return IntPolynomial([0] * s + self.coeffs)

    def reflect(self) -> IntPolynomial:
        """p(-x)."""
        return IntPolynomial([a if i % 2 == 0 else -a for i, a in enumerate(self.coeffs)])

    def exact_div(self, d: int) -> IntPolynomial:
        out = []
        for i, a in enumerate(self.coeffs):
            q, rem = divmod(a, d)
            if rem:
                raise InternalConsistencyFailure(f"coefficient {i} ({a}) not divisible by {d}")
            out.append(q)
        return IntPolynomial(out)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise InvalidParameter(f"k must be an integer >= 2, got {k!r}")


def _padded(poly: IntPolynomial, length: int) -> tuple[int, ...]:
    if poly.degree > length:
        raise InternalConsistencyFailure("polynomial degree exceeds code length")
    return tuple(poly[j] for j in range(length + 1))


def hamming_weights_recurrence(k: int) -> WeightDistribution:
    """W(j) from j W(j) = C(n, j-1) - W(j-1) - (n - j + 2) W(j-2)."""
    _check_k(k)
    code_len = (1 << k) - 1
    w = [1, 0, 0]
    for j in range(3, code_len + 1):
        num = comb(code_len, j - 1) - w[j - 1] - (code_len - j + 2) * w[j - 2]
        q, rem = divmod(num, j)
        if rem or q < 0:
            raise InternalConsistencyFailure(f"recurrence step j={j} gave {num}/{j}")
        w.append(q)
    return WeightDistribution(code_len, tuple(w[: code_len + 1]))


def hamming_enumerator(k: int) -> IntPolynomial:
    """f(x) = [(1+x)^n + n (1+x)^((n-1)/2) (1-x)^((n+1)/2)] / (n+1), n = 2^k - 1."""
    _check_k(k)
    code_len = (1 << k) - 1
    p = IntPolynomial.binomial_power(1, 1, code_len)
    q = IntPolynomial.binomial_power(1, 1, (code_len - 1) // 2) * IntPolynomial.binomial_power(
        1, -1, (code_len + 1) // 2
    )
    return (p + q.scale(code_len)).exact_div(code_len + 1)


def hamming_weights_closed(k: int) -> WeightDistribution:
    return WeightDistribution((1 << k) - 1, _padded(hamming_enumerator(k), (1 << k) - 1))


def extended_enumerator(k: int) -> IntPolynomial:
    """g(x) = [(1+x)^N + (1-x)^N + 2(N-1)(1-x^2)^(N/2)] / 2^(k+1), N = 2^k."""
    _check_k(k)
    dim = 1 << k
    p = IntPolynomial.binomial_power(1, 1, dim) + IntPolynomial.binomial_power(1, -1, dim)
    p = p + IntPolynomial.binomial_power(1, -1, dim // 2, step=2).scale(2 * (dim - 1))
    return p.exact_div(2 ** (k + 1))


def extended_enumerator_from_hamming(k: int) -> IntPolynomial:
    """g(x) = [f(x) + f(-x)]/2 + x [f(x) - f(-x)]/2."""
    f = hamming_enumerator(k)
    even = (f + f.reflect()).exact_div(2)
    odd = (f - f.reflect()).exact_div(2)
    return even + odd.shift(1)


def extended_weights(k: int) -> WeightDistribution:
    """V(j) = W(j) + W(j-1) for even j, 0 for odd j.

    Cross-checked against both closed forms of g(x); any disagreement
    raises InternalConsistencyFailure.
    """
    w = hamming_weights_recurrence(k)
    dim = 1 << k
    v = tuple((w[j] + w[j - 1]) if j % 2 == 0 else 0 for j in range(dim + 1))
    for label, poly in (
        ("closed g(x)", extended_enumerator(k)),
        ("even/odd split of f(x)", extended_enumerator_from_hamming(k)),
    ):
        if _padded(poly, dim) != v:
            raise InternalConsistencyFailure(f"V(j) disagrees with {label} for k={k}")
    return WeightDistribution(dim, v)


def points_per_weight(k: int) -> list[int]:
    """H(j) = 2^(2^k - j) V(j): points generated by weight-j codewords."""
    dim = 1 << k
    v = extended_weights(k)
    h = [(1 << (dim - j)) * v[j] for j in range(dim + 1)]
    g = extended_enumerator(k)
    # 2^dim g(x) = sum H(j) (2x)^j, coefficientwise
    for j in range(dim + 1):
        if (g[j] << dim) != (h[j] << j):
            raise InternalConsistencyFailure(f"H({j}) inconsistent with g(x)")
    return h


def base_count(k: int) -> int:
    """(3^n + 2(n-1) 3^(n/2) + 1) / (2n) with n = 2^k, checked to be exact."""
    _check_k(k)
    dim = 1 << k
    num = 3**dim + 2 * (dim - 1) * 3 ** (dim // 2) + 1
    q, rem = divmod(num, 2 * dim)
    if rem:
        raise InternalConsistencyFailure(f"base count numerator not divisible by {2 * dim}")
    return q


def extended_enumerator_at(k: int, x: Fraction | int) -> Fraction:
    return Fraction(extended_enumerator(k)(Fraction(x)))


def rm_min_weight_count(r: int, k: int) -> int:
    """A_{2^(k-r)} = 2^r prod_{i<k-r} (2^(k-i) - 1) / (2^(k-r-i) - 1)."""
    if not (isinstance(r, int) and isinstance(k, int)) or r < 0 or r > k - 2:
        raise InvalidParameter(f"need 0 <= r <= k-2, got r={r!r}, k={k!r}")
    num, den = 1 << r, 1
    for i in range(k - r):
        num *= (1 << (k - i)) - 1
        den *= (1 << (k - r - i)) - 1
    q, rem = divmod(num, den)
    if rem:
        raise InvalidParameter(f"minimum-weight count for r={r}, k={k} is not an integer")
    return q


def weights_bruteforce(c: LinearCode, cap: int = DEFAULT_ENUM_CAP) -> WeightDistribution:
    return WeightDistribution(c.length, tuple(weight_histogram(c, cap)))
