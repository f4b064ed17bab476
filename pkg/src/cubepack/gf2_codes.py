"""Binary linear codes: Hamming, extended Hamming and Reed-Muller.

Words are stored as Python ints with coordinate ``i`` at bit ``i``; the
string form lists coordinate 0 first.  Bulk enumeration works on numpy
``uint64`` arrays of shape ``(count, nwords)`` using the same bit layout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import EnumerationRefused, InvalidParameter, UndefinedMinWeight

DEFAULT_ENUM_CAP = 26
MAX_CODE_K = 10
_BLOCK_BITS = 16


@dataclass(frozen=True)
class BitWord:
    value: int
    length: int

    def __post_init__(self):
        if self.length <= 0:
            raise InvalidParameter("BitWord length must be positive")
        if self.value < 0 or self.value >> self.length:
            raise InvalidParameter("BitWord value does not fit its length")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> BitWord:
        value = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise InvalidParameter(f"bit {i} is {b!r}, expected 0 or 1")
            value |= b << i
        return cls(value, len(bits))

    @classmethod
    def from_str(cls, s: str) -> BitWord:
        return cls.from_bits([int(c) for c in s])

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def bits(self) -> list[int]:
        return [(self.value >> i) & 1 for i in range(self.length)]

    def support(self) -> list[int]:
        return [i for i in range(self.length) if (self.value >> i) & 1]

    def __xor__(self, other: BitWord) -> BitWord:
        if self.length != other.length:
            raise InvalidParameter("XOR of words with different lengths")
        return BitWord(self.value ^ other.value, self.length)

    def __getitem__(self, i: int) -> int:
        return (self.value >> i) & 1

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits())


@dataclass(frozen=True)
class BinMatrix:
    rows: tuple[BitWord, ...]
    ncols: int

    def __post_init__(self):
        for r in self.rows:
            if r.length != self.ncols:
                raise InvalidParameter("all rows must have ncols entries")

    @classmethod
    def from_ints(cls, rows: Iterable[int], ncols: int) -> BinMatrix:
        return cls(tuple(BitWord(r, ncols) for r in rows), ncols)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> BinMatrix:
        words = tuple(BitWord.from_bits(r) for r in rows)
        return cls(words, len(rows[0]) if rows else 0)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def ints(self) -> list[int]:
        return [r.value for r in self.rows]

    def rank(self) -> int:
        return gf2_rank(self.ints())

    def column(self, j: int) -> int:
        """Column ``j`` packed as an int, row 0 at bit 0."""
        return sum(((r.value >> j) & 1) << i for i, r in enumerate(self.rows))

    def to_array(self) -> np.ndarray:
        return np.array([r.bits() for r in self.rows], dtype=np.uint8).reshape(
            self.nrows, self.ncols
        )


# GF(2) elimination on int rows


def _echelon(rows: Iterable[int]) -> dict[int, int]:
    """Reduce rows to a basis keyed by pivot bit (the lowest set bit)."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            p = (r & -r).bit_length() - 1
            if p not in basis:
                basis[p] = r
                break
            r ^= basis[p]
    return basis


def _reduce(vec: int, basis: dict[int, int]) -> int:
    while vec:
        p = (vec & -vec).bit_length() - 1
        if p not in basis:
            return vec
        vec ^= basis[p]
    return 0


def gf2_rank(rows: Iterable[int]) -> int:
    return len(_echelon(rows))


def in_row_space(vec: int, rows: Iterable[int]) -> bool:
    return _reduce(vec, _echelon(rows)) == 0


def null_space(m: BinMatrix) -> list[int]:
    """Basis of ``{x : m x^T = 0}`` as int words of length ``m.ncols``."""
    n = m.ncols
    rows = m.ints()
    pivots: list[int] = []
    rref: list[int] = []
    for col in range(n):
        bit = 1 << col
        idx = next((i for i, r in enumerate(rows) if r & bit), None)
        if idx is None:
            continue
        piv = rows.pop(idx)
        rows = [r ^ piv if r & bit else r for r in rows]
        rref = [r ^ piv if r & bit else r for r in rref]
        rref.append(piv)
        pivots.append(col)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = 1 << free
        for col, r in zip(pivots, rref):
            if (r >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


# Codes


@dataclass(frozen=True)
class LinearCode:
    length: int
    dimension: int
    generator: BinMatrix
    claimed_min_distance: int
    name: str = ""
    family: tuple = field(default=(), compare=False)

    def __post_init__(self):
        g = self.generator
        if g.ncols != self.length or g.nrows != self.dimension:
            raise InvalidParameter(
                f"generator is {g.nrows}x{g.ncols}, expected "
                f"{self.dimension}x{self.length}"
            )
        if g.rank() != self.dimension:
            raise InvalidParameter("generator rows are linearly dependent")
        if self.claimed_min_distance < 1:
            raise InvalidParameter("claimed_min_distance must be positive")

    @property
    def size(self) -> int:
        return 1 << self.dimension

    def contains(self, word: BitWord | int) -> bool:
        v = word.value if isinstance(word, BitWord) else word
        return in_row_space(v, self.generator.ints())

    def encode(self, message: int) -> BitWord:
        v = 0
        for i, row in enumerate(self.generator.ints()):
            if (message >> i) & 1:
                v ^= row
        return BitWord(v, self.length)

    def __str__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"{label}[{self.length},{self.dimension},{self.claimed_min_distance}]"


def _check_k(k: int, lo: int = 2) -> None:
    if not isinstance(k, int) or k < lo or k > MAX_CODE_K:
        raise InvalidParameter(f"k must be an integer in [{lo}, {MAX_CODE_K}], got {k!r}")


def hamming_parity_check(k: int) -> BinMatrix:
    """k x (2^k - 1) matrix whose column j-1 is j in binary, MSB in row 0."""
    _check_k(k)
    n = (1 << k) - 1
    rows = []
    for b in range(k):
        shift = k - 1 - b
        rows.append(sum(1 << (j - 1) for j in range(1, n + 1) if (j >> shift) & 1))
    return BinMatrix.from_ints(rows, n)


def hamming_code(k: int) -> LinearCode:
    h = hamming_parity_check(k)
    n = h.ncols
    gen = null_space(h)
    return LinearCode(
        n, len(gen), BinMatrix.from_ints(gen, n), 3, name=f"H({k})", family=("hamming", k)
    )


def extend_code(c: LinearCode) -> LinearCode:
    """Append an overall parity bit as the last coordinate."""
    n = c.length
    rows = [r | ((r.bit_count() & 1) << n) for r in c.generator.ints()]
    claimed = c.claimed_min_distance + (c.claimed_min_distance & 1)
    family = ("extended_hamming", c.family[1]) if c.family[:1] == ("hamming",) else ()
    name = f"EH({c.family[1]})" if family else f"ext({c.name})"
    return LinearCode(n + 1, c.dimension, BinMatrix.from_ints(rows, n + 1), claimed, name, family)


def extended_hamming_code(k: int) -> LinearCode:
    return extend_code(hamming_code(k))


def rm_monomials(r: int, k: int) -> list[tuple[int, ...]]:
    """Monomials of degree <= r as tuples of variable indices, by degree."""
    out: list[tuple[int, ...]] = []
    for deg in range(r + 1):
        out.extend(itertools.combinations(range(k), deg))
    return out


def rm_evaluation(mono: tuple[int, ...], k: int) -> int:
    """Evaluation vector of a monomial; point t has x_i = bit (k-1-i) of t."""
    v = 0
    for t in range(1 << k):
        if all((t >> (k - 1 - i)) & 1 for i in mono):
            v |= 1 << t
    return v


@lru_cache(maxsize=None)
def reed_muller(r: int, k: int) -> LinearCode:
    if not isinstance(k, int) or k < 1 or k > MAX_CODE_K:
        raise InvalidParameter(f"k must be an integer in [1, {MAX_CODE_K}], got {k!r}")
    if not isinstance(r, int) or r < 0 or r > k:
        raise InvalidParameter(f"need 0 <= r <= k, got r={r!r}, k={k}")
    rows = [rm_evaluation(m, k) for m in rm_monomials(r, k)]
    n = 1 << k
    return LinearCode(
        n, len(rows), BinMatrix.from_ints(rows, n), 1 << (k - r), f"RM({r},{k})", ("rm", r, k)
    )


def permute_code(c: LinearCode, perm: Sequence[int]) -> LinearCode:
    """Code whose coordinate ``i`` is coordinate ``perm[i]`` of ``c``."""
    if sorted(perm) != list(range(c.length)):
        raise InvalidParameter("perm is not a permutation of the coordinates")
    rows = []
    for r in c.generator.ints():
        rows.append(sum(((r >> src) & 1) << i for i, src in enumerate(perm)))
    return LinearCode(
        c.length, c.dimension, BinMatrix.from_ints(rows, c.length),
        c.claimed_min_distance, f"perm({c.name})",
    )


def hamming_to_rm_permutation(k: int) -> list[int]:
    """Coordinate map taking EH(k) onto RM(k-2, k).

    The parity-check matrix of EH(k) has columns (1, bin j) for j = 1..n-1
    and (1, 0) for the appended parity bit, which are the RM(1, k)
    evaluation columns at points j and 0.  So RM coordinate t reads EH
    coordinate (t - 1) mod 2^k.
    """
    n = 1 << k
    return [(t - 1) % n for t in range(n)]


def subcode_of(a: LinearCode, b: LinearCode) -> bool:
    if a.length != b.length:
        raise InvalidParameter("codes have different lengths")
    basis = _echelon(b.generator.ints())
    return all(_reduce(r, basis) == 0 for r in a.generator.ints())


def same_code(a: LinearCode, b: LinearCode) -> bool:
    return a.dimension == b.dimension and subcode_of(a, b)


# Enumeration


def _nwords(length: int) -> int:
    return (length + 63) // 64


def _to_words(v: int, nw: int) -> np.ndarray:
    return np.array([(v >> (64 * i)) & 0xFFFFFFFFFFFFFFFF for i in range(nw)], dtype=np.uint64)


def _span_table(rows: Sequence[int], nw: int) -> np.ndarray:
    """All 2^len(rows) combinations, message-counter order, as word arrays."""
    table = np.zeros((1, nw), dtype=np.uint64)
    for r in rows:
        table = np.concatenate([table, table ^ _to_words(r, nw)])
    return table


def iter_codeword_blocks(
    c: LinearCode, cap: int = DEFAULT_ENUM_CAP, block_bits: int = _BLOCK_BITS
) -> Iterator[np.ndarray]:
    """Yield all codewords in message-counter order as uint64 blocks.

    Message ``m`` maps to the XOR of generator rows ``i`` with bit ``i`` of
    ``m`` set.  Blocks cover consecutive message ranges of size
    ``2^block_bits``, so shards are just ranges of the high message bits.
    """
    if c.dimension > cap:
        raise EnumerationRefused(
            f"{c} has dimension {c.dimension} > enumeration cap {cap}"
        )
    return _codeword_blocks(c, block_bits)


def _codeword_blocks(c: LinearCode, block_bits: int) -> Iterator[np.ndarray]:
    nw = _nwords(c.length)
    rows = c.generator.ints()
    lo = min(block_bits, c.dimension)
    low_table = _span_table(rows[:lo], nw)
    high_rows = rows[lo:]
    for h in range(1 << len(high_rows)):
        offset = 0
        for i, r in enumerate(high_rows):
            if (h >> i) & 1:
                offset ^= r
        yield low_table ^ _to_words(offset, nw) if offset else low_table.copy()


def block_weights(block: np.ndarray) -> np.ndarray:
    return np.bitwise_count(block).sum(axis=1, dtype=np.int64)


def words_to_ints(block: np.ndarray) -> list[int]:
    out = []
    for row in block:
        v = 0
        for i, w in enumerate(row):
            v |= int(w) << (64 * i)
        out.append(v)
    return out


def enumerate_codewords(c: LinearCode, cap: int = DEFAULT_ENUM_CAP) -> Iterator[BitWord]:
    blocks = iter_codeword_blocks(c, cap)
    return (BitWord(v, c.length) for b in blocks for v in words_to_ints(b))


def weight_histogram(c: LinearCode, cap: int = DEFAULT_ENUM_CAP) -> list[int]:
    hist = np.zeros(c.length + 1, dtype=np.int64)
    for block in iter_codeword_blocks(c, cap):
        hist += np.bincount(block_weights(block), minlength=c.length + 1)
    return [int(x) for x in hist]


def min_weight(c: LinearCode, cap: int = DEFAULT_ENUM_CAP) -> int:
    if c.dimension == 0:
        raise UndefinedMinWeight("zero-dimensional code has no nonzero codeword")
    hist = weight_histogram(c, cap)
    return next(w for w in range(1, c.length + 1) if hist[w])


# Verified minimum-distance lower bounds


@dataclass(frozen=True)
class DistanceEvidence:
    """Outcome of checking ``claimed_min_distance`` as a lower bound.

    ``holds`` is True (proved), False (refuted by a low-weight word) or
    None (no available method decides it).
    """

    claimed: int
    holds: bool | None
    method: str
    detail: str = ""


def parity_check_matrix(c: LinearCode) -> BinMatrix:
    return BinMatrix.from_ints(null_space(c.generator), c.length)


def _columns_distance_at_least(h: BinMatrix, d: int) -> bool:
    """d(C) >= d for d <= 4: every d-1 columns of h independent."""
    cols = [h.column(j) for j in range(h.ncols)]
    if d >= 2 and any(c == 0 for c in cols):
        return False
    if d >= 3 and len(set(cols)) != len(cols):
        return False
    if d >= 4:
        colset = set(cols)
        for i, j in itertools.combinations(range(len(cols)), 2):
            x = cols[i] ^ cols[j]
            if x in colset and x != cols[i] and x != cols[j]:
                return False
    return True


@lru_cache(maxsize=None)
def rm_plotkin_distance(r: int, k: int) -> int:
    """Lower bound on d(RM(r, k)) from the (u | u+v) decomposition.

    Each level checks that RM(r, k) is spanned by (u | u) for u in
    RM(r, k-1) together with (0 | v) for v in RM(r-1, k-1), which gives
    d >= min(2 d(RM(r, k-1)), d(RM(r-1, k-1))).
    """
    if r == 0:
        return 1 << k
    if r == k:
        return 1
    half = 1 << (k - 1)
    u_rows = reed_muller(r, k - 1).generator.ints()
    v_rows = reed_muller(r - 1, k - 1).generator.ints()
    stacked = [u | (u << half) for u in u_rows] + [v << half for v in v_rows]
    code_rows = reed_muller(r, k).generator.ints()
    if gf2_rank(stacked) != len(code_rows) or gf2_rank(stacked + code_rows) != len(code_rows):
        raise InvalidParameter(f"RM({r},{k}) does not match its Plotkin decomposition")
    return min(2 * rm_plotkin_distance(r, k - 1), rm_plotkin_distance(r - 1, k - 1))


def verify_claimed_distance(c: LinearCode, cap: int = DEFAULT_ENUM_CAP) -> DistanceEvidence:
    d = c.claimed_min_distance
    if c.dimension == 0:
        return DistanceEvidence(d, True, "empty", "no nonzero codewords")
    if d <= 4:
        ok = _columns_distance_at_least(parity_check_matrix(c), d)
        return DistanceEvidence(d, ok, "parity-check columns", f"every {d - 1} columns independent: {ok}")
    if c.dimension <= cap:
        mw = min_weight(c, cap)
        return DistanceEvidence(d, mw >= d, "enumeration", f"min weight {mw}")
    if c.family[:1] == ("rm",):
        _, r, k = c.family
        if same_code(c, reed_muller(r, k)):
            bound = rm_plotkin_distance(r, k)
            if bound >= d:
                return DistanceEvidence(d, True, "plotkin recursion", f"d >= {bound}")
    return DistanceEvidence(d, None, "none", "no method applies")


def rm_dimension(r: int, k: int) -> int:
    return sum(comb(k, i) for i in range(r + 1))
