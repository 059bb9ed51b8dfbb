"""Triorthogonality, indicator polynomials and Reed-Muller codes.

Points of F2^n are packed ints with ``x1`` as the least significant bit, so
the 2^m evaluation points of a Reed-Muller code are exactly the rows of
``b_matrix(m)`` in order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable

import numpy as np

from .bitmat import BitMatrix, column_product_word, mat_mul, rank
from .config import DEFAULT_LIMITS
from .phasepoly import format_subset


class TriorthoError(ValueError):
    pass


def _subsets_upto3(n: int):
    for d in (1, 2, 3):
        yield from combinations(range(n), d)


def _weights(m: BitMatrix):
    """(subset, weight of its column product) for every 1..3 column subset."""
    cols = m.columns
    for i in range(m.ncols):
        yield (i,), cols[i].bit_count()
    for i, j in combinations(range(m.ncols), 2):
        yield (i, j), (cols[i] & cols[j]).bit_count()
    for i, j, k in combinations(range(m.ncols), 3):
        yield (i, j, k), (cols[i] & cols[j] & cols[k]).bit_count()


_MODULI = {1: 8, 2: 4, 3: 2}


def is_triorthogonal(m: BitMatrix) -> bool:
    """Columns, pair products and triple products have weight 0 mod 8, 4, 2."""
    return all(w % _MODULI[len(s)] == 0 for s, w in _weights(m))


def is_semi_triorthogonal(m: BitMatrix) -> bool:
    """Every product of at most three (not necessarily distinct) columns has even weight."""
    return all(w % 2 == 0 for _, w in _weights(m))


def triorthogonality_defects(m: BitMatrix) -> list[tuple[tuple[int, ...], int]]:
    """The column subsets whose product weight breaks triorthogonality."""
    return [(s, w) for s, w in _weights(m) if w % _MODULI[len(s)]]


@dataclass(frozen=True)
class IndicatorPolynomial:
    """Polynomial over F2 as a set of monomials (packed variable subsets; 0 is the constant)."""

    num_vars: int
    monomials: frozenset[int]

    def degree(self) -> int:
        """Largest monomial degree; -1 for the zero polynomial."""
        return max((s.bit_count() for s in self.monomials), default=-1)

    def is_zero(self) -> bool:
        return not self.monomials

    def evaluate(self, x: int) -> int:
        return sum(1 for s in self.monomials if s & x == s) & 1

    def __add__(self, other: "IndicatorPolynomial") -> "IndicatorPolynomial":
        if other.num_vars != self.num_vars:
            raise TriorthoError("variable count mismatch")
        return IndicatorPolynomial(self.num_vars, self.monomials ^ other.monomials)

    def ordered(self) -> list[int]:
        """Monomials highest degree first, then lexicographic in variable indices."""
        return sorted(self.monomials, key=lambda s: (-s.bit_count(), _indices(s)))

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        return "+".join(format_subset(_indices(s)) for s in self.ordered())


def _indices(s: int) -> tuple[int, ...]:
    return tuple(j for j in range(s.bit_length()) if (s >> j) & 1)


def _odd_rows(m: BitMatrix) -> list[int]:
    return sorted(r for r, c in Counter(m.rows).items() if c % 2)


def _anf_dense(points: Iterable[int], n: int) -> frozenset[int]:
    f = np.zeros(1 << n, dtype=np.uint8)
    for p in points:
        f[p] ^= 1
    for j in range(n):
        v = f.reshape(-1, 2, 1 << j)
        v[:, 1, :] ^= v[:, 0, :]
    return frozenset(int(s) for s in np.flatnonzero(f))


def _anf_sparse(points: Iterable[int], n: int) -> frozenset[int]:
    # the point indicator of b is the sum of x_T over all T containing b
    full = (1 << n) - 1
    out: set[int] = set()
    for b in points:
        free = full & ~b
        sub = free
        while True:
            out ^= {b | sub}
            if sub == 0:
                break
            sub = (sub - 1) & free
    return frozenset(out)


def anf(points: Iterable[int], n: int, cap: int | None = None) -> IndicatorPolynomial:
    """Algebraic normal form of the indicator of an odd-multiplicity point set."""
    points = list(points)
    cap = DEFAULT_LIMITS.dense_indicator_cap if cap is None else cap
    sparse_cost = sum(1 << (n - p.bit_count()) for p in points)
    dense_cost = n << n if n <= cap else None
    if dense_cost is not None and dense_cost <= sparse_cost:
        return IndicatorPolynomial(n, _anf_dense(points, n))
    if dense_cost is None and sparse_cost > (1 << cap):
        raise TriorthoError(f"indicator polynomial on {n} variables exceeds cap {cap}")
    return IndicatorPolynomial(n, _anf_sparse(points, n))


def indicator_polynomial(m: BitMatrix, cap: int | None = None) -> IndicatorPolynomial:
    """Polynomial that is 1 exactly on rows occurring an odd number of times."""
    return anf(_odd_rows(m), m.ncols, cap)


def gadget_indicator(m: BitMatrix, cap: int | None = None) -> IndicatorPolynomial:
    """Indicator polynomial with the zero row's multiplicity chosen to make the row count even.

    A zero row is a gadget acting on no qubit (a global phase), so its
    multiplicity is free; fixing the total row count to be even is what makes
    the degree test exact for matrices such as the 15 nonzero 4-bit rows.
    """
    rows = Counter(r for r in m.rows if r)
    points = [r for r, c in rows.items() if c % 2]
    if sum(rows.values()) % 2:
        points.append(0)
    return anf(sorted(points), m.ncols, cap)


def degree_check(m: BitMatrix, cap: int | None = None) -> tuple[int, bool]:
    """Degree of the gadget indicator and whether it is at most ``ncols - 4``.

    The zero polynomial passes for every column count.
    """
    p = gadget_indicator(m, cap)
    return p.degree(), p.is_zero() or p.degree() <= m.ncols - 4


def points_of(p: IndicatorPolynomial) -> list[int]:
    """Points where ``p`` is 1, by a dense forward transform."""
    n = p.num_vars
    f = np.zeros(1 << n, dtype=np.uint8)
    for s in p.monomials:
        f[s] = 1
    for j in range(n):
        v = f.reshape(-1, 2, 1 << j)
        v[:, 1, :] ^= v[:, 0, :]
    return [int(x) for x in np.flatnonzero(f)]


def matrix_of(p: IndicatorPolynomial) -> BitMatrix:
    """Matrix with one row per point where ``p`` is 1."""
    return BitMatrix(points_of(p), p.num_vars)


# Reed-Muller codes


@dataclass(frozen=True)
class RMCode:
    r: int
    m: int
    generator: BitMatrix
    monomials: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return rm_dimension(self.r, self.m)


def rm_dimension(r: int, m: int) -> int:
    return sum(comb(m, d) for d in range(r + 1))


def monomial_word(mask: int, m: int) -> int:
    """Evaluation vector of ``prod_{i in mask} x_i`` over all 2^m points, packed."""
    return sum(1 << p for p in range(1 << m) if p & mask == mask)


def rm_generator(r: int, m: int) -> RMCode:
    if not 0 <= r <= m:
        raise TriorthoError(f"need 0 <= r <= m, got r={r}, m={m}")
    if 1 << m > (1 << 16):
        raise TriorthoError(f"RM code length 2^{m} too large")
    monos = [sum(1 << i for i in s) for d in range(r + 1) for s in combinations(range(m), d)]
    gen = BitMatrix([monomial_word(s, m) for s in monos], 1 << m)
    return RMCode(r, m, gen, tuple(monos))


def rm_dual_verify(r: int, m: int) -> bool:
    """Check that RM(m-r-1, m) is orthogonal to RM(r, m) and the dimensions add to 2^m."""
    if not 0 <= r < m:
        raise TriorthoError(f"need 0 <= r < m, got r={r}, m={m}")
    a = rm_generator(r, m).generator
    b = rm_generator(m - r - 1, m).generator
    orthogonal = all(w == 0 for w in mat_mul(a, b.transpose()).rows)
    return orthogonal and rank(a) + rank(b) == 1 << m


# test data and corrections


def clifford_correction(m: BitMatrix) -> BitMatrix:
    """Rows to append to a semi-triorthogonal matrix so the union is triorthogonal.

    Pairs with product weight 2 mod 4 get two copies of ``e_i + e_j``; then
    each column is topped up to a multiple of 8 with copies of ``e_i``.
    """
    if not is_semi_triorthogonal(m):
        raise TriorthoError("input is not semi-triorthogonal")
    n = m.ncols
    cols = m.columns
    extra: list[int] = []
    colw = [c.bit_count() for c in cols]
    for i, j in combinations(range(n), 2):
        if (cols[i] & cols[j]).bit_count() % 4 == 2:
            extra += [(1 << i) | (1 << j)] * 2
            colw[i] += 2
            colw[j] += 2
    for i in range(n):
        extra += [1 << i] * ((-colw[i]) % 8)
    return BitMatrix(extra, n)


def random_semi_triorthogonal(rng: np.random.Generator, n: int, max_monomials: int = 4,
                              duplicate_pairs: int = 0) -> BitMatrix:
    """Rows of a random polynomial of degree <= n - 4, plus random duplicated rows, shuffled."""
    if n < 4:
        rows: list[int] = []
    else:
        monos = set()
        for _ in range(int(rng.integers(0, max_monomials + 1))):
            d = int(rng.integers(0, n - 3))
            idx = rng.choice(n, size=d, replace=False)
            monos ^= {int(sum(1 << int(i) for i in idx))}
        rows = points_of(IndicatorPolynomial(n, frozenset(monos)))
    for _ in range(duplicate_pairs):
        r = int(rng.integers(0, 1 << n)) if n else 0
        rows += [r, r]
    rng.shuffle(rows)
    return BitMatrix(rows, n)


def random_triorthogonal(rng: np.random.Generator, n: int, max_monomials: int = 4,
                         duplicate_pairs: int = 0) -> BitMatrix:
    m = random_semi_triorthogonal(rng, n, max_monomials, duplicate_pairs)
    rows = list(m.vstack(clifford_correction(m)).rows)
    rng.shuffle(rows)
    return BitMatrix(rows, n)
