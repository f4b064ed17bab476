"""Lower bounds for the layered construction, evaluated exactly.

``leech_l`` is the constant 4.768462 taken as printed; it is only ever
compared against the finite partial sums computed here, never derived.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalConsistencyFailure, InvalidParameter
from .weight_enum import base_count, rm_min_weight_count

LEECH_L = Fraction("4.768462")


def _gaussian_product(k: int, rp: int) -> int:
    """prod_{i<rp} (2^k - 2^i) / (2^rp - 2^i), checked to be an integer."""
    num = den = 1
    for i in range(rp):
        num *= (1 << k) - (1 << i)
        den *= (1 << rp) - (1 << i)
    q, rem = divmod(num, den)
    if rem:
        raise InternalConsistencyFailure(f"product for k={k}, r'={rp} is not an integer")
    return q


def _bracket(k: int, rp: int) -> int:
    """(2^k / 2^rp) * prod_{i<rp} (2^k - 2^i) / (2^rp - 2^i)."""
    return (1 << (k - rp)) * _gaussian_product(k, rp)


def _check_k(k: int, lo: int = 4) -> None:
    if not isinstance(k, int) or k < lo:
        raise InvalidParameter(f"k must be an integer >= {lo}, got {k!r}")


def lower_bound_terms(k: int) -> list[tuple[int, int]]:
    """(r', 2^(2^k - 2^r' + r'/2 - 1) * bracket) for even r' in [4, 2[k/2]]."""
    _check_k(k)
    out = []
    for rp in range(4, 2 * (k // 2) + 1, 2):
        exp = (1 << k) - (1 << rp) + rp // 2 - 1
        out.append((rp, (1 << exp) * _bracket(k, rp)))
    return out


def layer_lower_term(k: int, r: int) -> int:
    """2^((k-r)/2 - 1) * 2^(2^k - 2^(k-r)) * A_{2^(k-r)}, the layer-side form."""
    m = (k - r) // 2
    return (1 << (m - 1)) * (1 << ((1 << k) - (1 << (k - r)))) * rm_min_weight_count(r, k)


def lower_bound_exact(k: int) -> int:
    terms = lower_bound_terms(k)
    for rp, value in terms:
        if value != layer_lower_term(k, k - rp):
            raise InternalConsistencyFailure(f"term r'={rp} disagrees with the layer count for k={k}")
    return base_count(k) + sum(v for _, v in terms)


def paper_formula_value(k: int, leech_l: Fraction = LEECH_L) -> Fraction:
    """The closed-form bound as printed, odd or even variant by parity of k.

    n^((log2 n + 1)/2) = 2^(k(k+1)/2) and sqrt(n) = 2^(k/2) are exact.
    """
    _check_k(k)
    n = 1 << k
    big = 1 << (k * (k + 1) // 2)
    tail = Fraction(2, 3) * n * ((n - 1) * (n - 2) - 3)
    if k % 2:
        return base_count(k) + leech_l * big - tail
    return base_count(k) + (leech_l - 2) * big - tail + Fraction(1 << (k // 2), 2)


def exponent_inequality_check(k: int, include_top: bool = False) -> list[tuple[int, bool]]:
    """2^k - 2^r' + r'/2 - 1 >= r'^2/2 + r'/2 + 1 for even r' in [4, k-1].

    ``include_top`` adds r' = k for even k, which lies outside the range
    the inequality is claimed for.
    """
    _check_k(k, 2)
    top = k if include_top and k % 2 == 0 else k - 1
    out = []
    for rp in range(4, top + 1, 2):
        lhs = Fraction((1 << k) - (1 << rp) - 1) + Fraction(rp, 2)
        rhs = Fraction(rp * rp, 2) + Fraction(rp, 2) + 1
        out.append((rp, lhs >= rhs))
    return out


def extension_term(k: int, rp: int) -> int:
    """2^(r'^2/2 + r'/2 + 1) * bracket, the summand after the exponent swap."""
    return (1 << (rp * rp // 2 + rp // 2 + 1)) * _bracket(k, rp)


def leech_ratio(k: int) -> Fraction:
    """Sum of extension terms over even r' in [0, k-1], over 2^(k(k+1)/2)."""
    if not isinstance(k, int) or k < 5 or k % 2 == 0:
        raise InvalidParameter(f"leech_ratio needs odd k >= 5, got {k!r}")
    total = sum(extension_term(k, rp) for rp in range(0, k, 2))
    return Fraction(total, 1 << (k * (k + 1) // 2))


@dataclass(frozen=True)
class SmallTermCheck:
    """The r' = 0 and r' = 2 summands against the subtracted correction."""

    term0: int
    term2: int
    printed_subtraction: Fraction
    gap: Fraction

    def to_json_dict(self) -> dict:
        return {
            "term_r0": str(self.term0),
            "term_r2": str(self.term2),
            "printed_subtraction": str(self.printed_subtraction),
            "gap": str(self.gap),
        }


def small_term_check(k: int) -> SmallTermCheck:
    """Exact r' in {0, 2} terms; they should be 2n and (2/3) n (n-1)(n-2)."""
    n = 1 << k
    t0, t2 = extension_term(k, 0), extension_term(k, 2)
    if t0 != 2 * n or 3 * t2 != 2 * n * (n - 1) * (n - 2):
        raise InternalConsistencyFailure(f"r' in {{0, 2}} terms have an unexpected form for k={k}")
    printed = Fraction(2, 3) * n * ((n - 1) * (n - 2) - 3)
    return SmallTermCheck(t0, t2, printed, t0 + t2 - printed)


def render(x: Fraction | int, digits: int = 10) -> str:
    """Decimal rendering with ``digits`` significant digits."""
    from decimal import Decimal, localcontext

    with localcontext() as ctx:
        ctx.prec = digits
        x = Fraction(x)
        return str(Decimal(x.numerator) / Decimal(x.denominator))


@dataclass(frozen=True)
class BoundReport:
    k: int
    n: int
    base: int
    terms: tuple[tuple[int, int], ...]
    sum_exact: int
    lower_bound_exact: int
    paper_formula_value: Fraction
    leech_ratio: Fraction | None
    small_terms: SmallTermCheck
    exponent_checks: tuple[tuple[int, bool], ...]

    @property
    def discrepancy_4n_flag(self) -> bool:
        return self.small_terms.gap == 4 * self.n

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "base": str(self.base),
            "terms": [{"r_prime": rp, "value": str(v)} for rp, v in self.terms],
            "sum_exact": str(self.sum_exact),
            "lower_bound_exact": str(self.lower_bound_exact),
            "paper_formula_value": str(self.paper_formula_value),
            "closed_form_decimal": render(self.paper_formula_value),
            "leech_ratio": None if self.leech_ratio is None else str(self.leech_ratio),
            "leech_ratio_decimal": None if self.leech_ratio is None else render(self.leech_ratio),
            "leech_l": str(LEECH_L),
            "small_terms": self.small_terms.to_json_dict(),
            "exponent_checks": [
                {"r_prime": rp, "holds": ok, "in_claimed_range": rp <= self.k - 1}
                for rp, ok in self.exponent_checks
            ],
            "closed_form_below_lower_bound_exact": self.paper_formula_value <= self.lower_bound_exact,
            "discrepancy_4n_flag": self.discrepancy_4n_flag,
        }


def bound_report(k: int) -> BoundReport:
    _check_k(k)
    terms = tuple(lower_bound_terms(k))
    sum_exact = sum(v for _, v in terms)
    return BoundReport(
        k=k,
        n=1 << k,
        base=base_count(k),
        terms=terms,
        sum_exact=sum_exact,
        lower_bound_exact=lower_bound_exact(k),
        paper_formula_value=paper_formula_value(k),
        leech_ratio=leech_ratio(k) if k % 2 else None,
        small_terms=small_term_check(k),
        exponent_checks=tuple(exponent_inequality_check(k, include_top=True)),
    )
