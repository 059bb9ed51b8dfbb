"""Diagonal CNOT+T phases as polynomials over Z8 (units of pi/4).

A :class:`PhasePolynomial` is a multiset of phase gadgets ``(support, coeff)``:
the basis state ``x`` picks up ``coeff`` whenever the bits of ``x`` selected by
``support`` have odd parity. Supports are packed ints, bit ``j`` = variable
``x_{j+1}``. Everything is modulo a global phase, so gadgets with an empty
support are dropped on construction.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .bitmat import BitMatrix, bitstring, pack
from .config import DEFAULT_LIMITS
from .zring import MODULUS

Term = tuple[int, int]
Subset = tuple[int, ...]

MAX_MONOMIAL_DEGREE = 3


class PhasePolyError(ValueError):
    pass


class GateClass(enum.Enum):
    IDENTITY = "identity"
    CLIFFORD = "clifford"
    NON_CLIFFORD = "non-clifford"


@dataclass(frozen=True)
class PhasePolynomial:
    num_vars: int
    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        limit = 1 << self.num_vars
        cleaned = []
        for support, coeff in self.terms:
            if not 0 <= support < limit:
                raise PhasePolyError(f"support {support:#b} exceeds {self.num_vars} variables")
            if support:
                cleaned.append((int(support), int(coeff) % MODULUS))
        object.__setattr__(self, "terms", tuple(cleaned))

    def __add__(self, other: "PhasePolynomial") -> "PhasePolynomial":
        """Multiset union: composing the two diagonal gates."""
        _check_same_vars(self, other)
        return PhasePolynomial(self.num_vars, self.terms + other.terms)

    def negate(self) -> "PhasePolynomial":
        return PhasePolynomial(self.num_vars, tuple((s, -c) for s, c in self.terms))

    def scale(self, k: int) -> "PhasePolynomial":
        return PhasePolynomial(self.num_vars, tuple((s, k * c) for s, c in self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        return format_gadgets(self)


@dataclass(frozen=True)
class MonomialPolynomial:
    """Phase function in the AND basis: ``sum_S c_S prod_{i in S} x_i``.

    Keys are sorted tuples of 0-based variable indices, sizes 1..3. Degree 4
    and up vanish mod 8 for pi/4 gadgets and are never stored.
    """

    num_vars: int
    coeffs: Mapping[Subset, int]

    def evaluate(self, x: Sequence[int]) -> int:
        return sum(c for s, c in self.coeffs.items() if all(x[i] for i in s)) % MODULUS

    def by_degree(self, d: int) -> dict[Subset, int]:
        return {s: c for s, c in self.coeffs.items() if len(s) == d}

    def __bool__(self) -> bool:
        return bool(self.coeffs)


def _check_same_vars(a: PhasePolynomial, b: PhasePolynomial) -> None:
    if a.num_vars != b.num_vars:
        raise PhasePolyError(f"variable count mismatch: {a.num_vars} vs {b.num_vars}")


def from_rows(m: BitMatrix, coeffs: Sequence[int] | None = None) -> PhasePolynomial:
    """One gadget per row of ``m``; default coefficient 1 (a pi/4 gadget)."""
    if coeffs is None:
        coeffs = [1] * m.nrows
    if len(coeffs) != m.nrows:
        raise PhasePolyError(f"{len(coeffs)} coefficients for {m.nrows} rows")
    return PhasePolynomial(m.ncols, tuple(zip(m.rows, coeffs)))


def _as_word(x: Sequence[int] | int, n: int) -> int:
    if isinstance(x, (int, np.integer)):
        if not 0 <= x < (1 << n):
            raise PhasePolyError(f"basis index {x} out of range for {n} variables")
        return int(x)
    if len(x) != n:
        raise PhasePolyError(f"bitvector of length {len(x)} for {n} variables")
    return pack(x)


def evaluate(pp: PhasePolynomial, x: Sequence[int] | int) -> int:
    """Phase of basis state ``x`` (bit sequence or packed int), in units of pi/4."""
    w = _as_word(x, pp.num_vars)
    return sum(c for s, c in pp.terms if (s & w).bit_count() & 1) % MODULUS


def fuse(pp: PhasePolynomial) -> PhasePolynomial:
    """Merge gadgets with equal support and drop the ones that cancel."""
    acc: dict[int, int] = defaultdict(int)
    for s, c in pp.terms:
        acc[s] = (acc[s] + c) % MODULUS
    return PhasePolynomial(pp.num_vars, tuple((s, c) for s, c in sorted(acc.items()) if c))


def to_monomial(pp: PhasePolynomial) -> MonomialPolynomial:
    """Boolean Fourier transform from the XOR basis to the AND basis, mod 8."""
    acc: dict[Subset, int] = defaultdict(int)
    for s, c in pp.terms:
        idx = [j for j in range(pp.num_vars) if (s >> j) & 1]
        for d in range(1, min(len(idx), MAX_MONOMIAL_DEGREE) + 1):
            k = c * (-2) ** (d - 1)
            for sub in combinations(idx, d):
                acc[sub] += k
    coeffs = {s: v % MODULUS for s, v in sorted(acc.items(), key=lambda kv: (len(kv[0]), kv[0]))
              if v % MODULUS}
    return MonomialPolynomial(pp.num_vars, coeffs)


def classify_monomial(mono: MonomialPolynomial) -> GateClass:
    if not mono.coeffs:
        return GateClass.IDENTITY
    for s, c in mono.coeffs.items():
        if len(s) == 1 and c % 2:
            return GateClass.NON_CLIFFORD
        if len(s) == 2 and c % 4:
            return GateClass.NON_CLIFFORD
        if len(s) >= 3:
            return GateClass.NON_CLIFFORD
    return GateClass.CLIFFORD


def classify(pp: PhasePolynomial) -> GateClass:
    """Identity, Clifford or non-Clifford, from the monomial coefficients."""
    return classify_monomial(to_monomial(pp))


def oracle_phases(pp: PhasePolynomial, cap: int | None = None) -> np.ndarray:
    """Brute-force phase table over all ``2**n`` basis states (uint8, mod 8)."""
    n = pp.num_vars
    cap = DEFAULT_LIMITS.oracle_cap if cap is None else cap
    if n > cap:
        raise PhasePolyError(f"{n} variables exceeds oracle cap {cap}")
    xs = np.arange(1 << n, dtype=np.uint32)
    out = np.zeros(1 << n, dtype=np.uint8)
    for s, c in fuse(pp).terms:
        parity = (np.bitwise_count(xs & np.uint32(s)) & 1).astype(np.uint8)
        out = (out + np.uint8(c) * parity) % MODULUS
    return out.astype(np.uint8)


def table_monomials(table: np.ndarray) -> np.ndarray:
    """Integer Moebius inversion of a phase table, mod 8.

    Entry ``S`` (packed) of the result is the AND-basis coefficient of
    ``prod_{i in S} x_i``. This works from the table alone, so it checks
    :func:`to_monomial` without sharing any of its algebra.
    """
    a = np.asarray(table, dtype=np.int64).copy()
    n = int(a.size).bit_length() - 1
    if a.size != 1 << n:
        raise PhasePolyError("phase table length must be a power of two")
    for j in range(n):
        v = a.reshape(-1, 2, 1 << j)
        v[:, 1, :] -= v[:, 0, :]
    return a % MODULUS


def classify_table(table: np.ndarray) -> GateClass:
    """Classify a diagonal gate from its phase table alone."""
    coeffs = table_monomials(table)
    if coeffs[0]:
        # a global phase offset; measure everything relative to |0...0>
        coeffs = table_monomials((np.asarray(table, dtype=np.int64) - int(table[0])) % MODULUS)
    if not coeffs.any():
        return GateClass.IDENTITY
    degrees = np.bitwise_count(np.arange(coeffs.size, dtype=np.uint32))
    if (coeffs[degrees == 1] % 2).any() or (coeffs[degrees == 2] % 4).any() or coeffs[degrees >= 3].any():
        return GateClass.NON_CLIFFORD
    return GateClass.CLIFFORD


def equal(p1: PhasePolynomial, p2: PhasePolynomial) -> bool:
    """Same diagonal gate up to global phase."""
    _check_same_vars(p1, p2)
    return classify(p1 + p2.negate()) is GateClass.IDENTITY


def parse_gadgets(text: str, num_vars: int | None = None) -> PhasePolynomial:
    """Parse "support-bitstring coefficient" lines; '#' comments."""
    terms = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or set(parts[0]) - {"0", "1"} or not parts[1].isdigit():
            raise PhasePolyError(f"line {lineno}: expected '<bitstring> <coeff>', got {line!r}")
        coeff = int(parts[1])
        if coeff >= MODULUS:
            raise PhasePolyError(f"line {lineno}: coefficient must be 0-{MODULUS - 1}")
        if num_vars is None:
            num_vars = len(parts[0])
        elif len(parts[0]) != num_vars:
            raise PhasePolyError(f"line {lineno}: support has {len(parts[0])} bits, expected {num_vars}")
        terms.append((pack([int(ch) for ch in parts[0]]), coeff))
    return PhasePolynomial(num_vars or 0, tuple(terms))


def format_gadgets(pp: PhasePolynomial) -> str:
    return "\n".join(f"{bitstring(s, pp.num_vars)} {c}" for s, c in pp.terms)


def format_subset(s: Iterable[int]) -> str:
    s = tuple(s)
    return "*".join(f"x{i + 1}" for i in s) if s else "1"
