"""CSS codes and their transversal diagonal gates on the third level of the Clifford hierarchy.

Operators are stored one per row (``logical_x`` is k x n, ``stab_x`` is r x n).
Physical qubit ``i`` therefore contributes the row ``(logical_x[:, i] |
stab_x[:, i])`` to the gadget matrix, and a logical gadget on subset ``s``
contributes ``(s | 0)``.

The identity checked throughout is ``D_P E D_H = E`` for the encoder ``E``:
applying T^p[i] on each physical qubit ``i`` implements the inverse of the
logical gadget set ``h``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .bitmat import BitMatrix, BitMatrixError, bitstring, kernel_basis, pack, parse_matrix, rank
from .config import DEFAULT_LIMITS
from .phasepoly import PhasePolynomial
from .triortho import is_triorthogonal
from .zring import MODULUS, KernelGenerators, Z8Matrix, kernel_generators, solve_linear

MAX_LOGICAL_DEGREE = 3


class CodeError(ValueError):
    pass


@dataclass(frozen=True)
class CssCode:
    logical_x: BitMatrix
    stab_x: BitMatrix

    def __post_init__(self):
        if self.logical_x.ncols != self.stab_x.ncols:
            raise CodeError(f"logical operators act on {self.logical_x.ncols} qubits, "
                            f"stabilisers on {self.stab_x.ncols}")
        stacked = self.logical_x.vstack(self.stab_x)
        if stacked.nrows > self.n or rank(stacked) < stacked.nrows:
            raise CodeError("logical X operators and X stabilisers must be linearly independent")

    @property
    def n(self) -> int:
        return self.logical_x.ncols

    @property
    def k(self) -> int:
        return self.logical_x.nrows

    @property
    def r(self) -> int:
        return self.stab_x.nrows

    def physical_rows(self) -> BitMatrix:
        """Row ``i`` is ``(logical_x[:, i] | stab_x[:, i])`` over k + r columns."""
        return self.logical_x.transpose().hstack(self.stab_x.transpose())


def new_code(logical_x: BitMatrix, stab_x: BitMatrix) -> CssCode:
    return CssCode(logical_x, stab_x)


def z_checks(code: CssCode) -> BitMatrix:
    """A basis of the Z checks, orthogonal to every logical X and X stabiliser."""
    basis = kernel_basis(code.logical_x.vstack(code.stab_x))
    return BitMatrix([pack(v) for v in basis], code.n)


@dataclass(frozen=True)
class LogicalGate:
    """Logical gadgets: packed subset of the k logical qubits -> Z8 coefficient."""

    k: int
    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for s, c in self.coeffs.items():
            if not 0 < s < (1 << self.k):
                raise CodeError(f"logical subset {s:#b} invalid for k={self.k}")
            if s.bit_count() > MAX_LOGICAL_DEGREE:
                raise CodeError(
                    f"logical gadget on {s.bit_count()} qubits; gadgets of degree > 3 decompose "
                    "into degree <= 3 ones via spider-nest identities, so pass those instead")
            if c % MODULUS:
                clean[s] = c % MODULUS
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def phase_polynomial(self) -> PhasePolynomial:
        return PhasePolynomial(self.k, tuple(self.coeffs.items()))


@dataclass(frozen=True)
class TransversalOp:
    """T-gate exponent per physical qubit."""

    t_powers: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "t_powers", tuple(int(t) % MODULUS for t in self.t_powers))

    @property
    def n(self) -> int:
        return len(self.t_powers)

    @classmethod
    def ones(cls, n: int) -> "TransversalOp":
        return cls((1,) * n)

    @classmethod
    def zeros(cls, n: int) -> "TransversalOp":
        return cls((0,) * n)


def _check_dims(code: CssCode, h: LogicalGate, p: TransversalOp) -> None:
    if h.k != code.k:
        raise CodeError(f"logical gate on {h.k} qubits for a code with k={code.k}")
    if p.n != code.n:
        raise CodeError(f"transversal op on {p.n} qubits for a code with n={code.n}")


def transversality_matrix(code: CssCode, h: LogicalGate, p: TransversalOp) -> BitMatrix:
    """Gadget matrix ``(H 0 ; PL PS)`` over k + r columns, rows repeated by multiplicity."""
    _check_dims(code, h, p)
    rows: list[int] = []
    for s, c in h.coeffs.items():
        rows += [s] * c
    for row, t in zip(code.physical_rows().rows, p.t_powers):
        rows += [row] * t
    return BitMatrix(rows, code.k + code.r)


def check_transversal(code: CssCode, h: LogicalGate, p: TransversalOp) -> bool:
    return is_triorthogonal(transversality_matrix(code, h, p))


def codeword_support(code: CssCode, b: Sequence[int], cap: int | None = None) -> set[tuple[int, ...]]:
    """Physical bitstrings ``b L + c S`` over all stabiliser choices ``c``."""
    if len(b) != code.k:
        raise CodeError(f"logical bitstring of length {len(b)} for k={code.k}")
    cap = DEFAULT_LIMITS.codeword_cap if cap is None else cap
    if 1 << code.r > cap:
        raise CodeError(f"2^{code.r} stabiliser combinations exceeds cap {cap}")
    return {tuple((w >> j) & 1 for j in range(code.n)) for w in _codewords(code, pack(b))}


def _xor_rows(rows: Sequence[int], sel: int) -> int:
    acc = 0
    for i, r in enumerate(rows):
        if (sel >> i) & 1:
            acc ^= r
    return acc


def _codewords(code: CssCode, b: int) -> list[int]:
    base = _xor_rows(code.logical_x.rows, b)
    return [base ^ _xor_rows(code.stab_x.rows, c) for c in range(1 << code.r)]


def oracle_transversal(code: CssCode, h: LogicalGate, p: TransversalOp, cap: int | None = None) -> bool:
    """Brute force over every logical word ``b`` and stabiliser choice ``c``.

    Requires ``f_P(b L + c S) + f_H(b) = 0 mod 8`` with ``f_P(w) = sum_i p_i w_i``
    and ``f_H(b) = sum_s h_s * parity(b & s)``.
    """
    _check_dims(code, h, p)
    cap = DEFAULT_LIMITS.oracle_cap if cap is None else cap
    if code.k + code.r > cap:
        raise CodeError(f"2^{code.k + code.r} (b, c) pairs exceeds oracle cap 2^{cap}")
    for b in range(1 << code.k):
        fh = sum(c for s, c in h.coeffs.items() if (s & b).bit_count() & 1)
        for w in _codewords(code, b):
            fp = sum(t for j, t in enumerate(p.t_powers) if (w >> j) & 1)
            if (fp + fh) % MODULUS:
                return False
    return True


# Z8 search over multiplicity vectors


def logical_rows(k: int) -> list[int]:
    """All nonempty logical subsets of size <= 3, by size then lexicographic."""
    return [sum(1 << i for i in s) for d in range(1, MAX_LOGICAL_DEGREE + 1)
            for s in combinations(range(k), d)]


@dataclass(frozen=True)
class NhatSystem:
    code: CssCode
    n_rows: BitMatrix       # N: logical subsets (zero-padded) stacked over physical rows
    subsets: tuple[int, ...]  # row labels of N-hat (packed column subsets of N)
    nhat: Z8Matrix

    @property
    def n_logical(self) -> int:
        return self.n_rows.nrows - self.code.n

    def split(self, m: Sequence[int]) -> tuple[LogicalGate, TransversalOp]:
        nl = self.n_logical
        h = LogicalGate(self.code.k, dict(zip(self.n_rows.rows[:nl], m[:nl])))
        return h, TransversalOp(tuple(m[nl:]))

    def join(self, h: LogicalGate, p: TransversalOp) -> tuple[int, ...]:
        nl = self.n_logical
        pos = {s: i for i, s in enumerate(self.n_rows.rows[:nl])}
        m = [0] * nl
        for s, c in h.coeffs.items():
            m[pos[s]] = c
        return tuple(m) + p.t_powers


def build_nhat(code: CssCode, cap: int | None = None) -> NhatSystem:
    """The Z8 system whose kernel is every triorthogonal multiplicity assignment.

    Column ``i`` is the Fourier image of row ``i`` of ``N``: entry ``2**(|S|-1)``
    on each column subset ``S`` (|S| <= 3) covered by that row.
    """
    cap = DEFAULT_LIMITS.nhat_cap if cap is None else cap
    width = code.k + code.r
    n_sub = sum(1 for d in (1, 2, 3) for _ in combinations(range(width), d))
    if n_sub > cap:
        raise CodeError(f"N-hat would have {n_sub} rows, exceeding cap {cap}")
    k_rows = logical_rows(code.k)
    nmat = BitMatrix(k_rows, width).vstack(code.physical_rows())
    subsets = tuple(sum(1 << i for i in s) for d in (1, 2, 3) for s in combinations(range(width), d))
    entries = tuple(
        tuple((1 << (s.bit_count() - 1)) if row & s == s else 0 for row in nmat.rows)
        for s in subsets)
    return NhatSystem(code, nmat, subsets, Z8Matrix(entries, nmat.nrows))


def transversal_generators(code: CssCode) -> list[tuple[LogicalGate, TransversalOp]]:
    """Generating set of all (logical gate, transversal T-pattern) pairs, canonically sorted."""
    system = build_nhat(code)
    gens = kernel_generators(system.nhat)
    return [system.split(g) for g in sorted(gens, key=_canonical_key)]


def _canonical_key(m: Sequence[int]):
    return (sum(1 for x in m if x), tuple(m))


def generator_vectors(code: CssCode) -> KernelGenerators:
    return kernel_generators(build_nhat(code).nhat)


def solve_transversal(code: CssCode, fixed: LogicalGate | TransversalOp
                      ) -> tuple[LogicalGate, TransversalOp] | None:
    """Complete a fixed logical gate with a T-pattern, or a fixed T-pattern with a logical gate."""
    system = build_nhat(code)
    nl = system.n_logical
    cols = list(zip(*system.nhat.entries)) if system.nhat.entries else [()] * system.n_rows.nrows
    if isinstance(fixed, LogicalGate):
        if fixed.k != code.k:
            raise CodeError(f"logical gate on {fixed.k} qubits for k={code.k}")
        known = system.join(fixed, TransversalOp.zeros(code.n))[:nl]
        known_cols, free_cols = cols[:nl], cols[nl:]
    elif isinstance(fixed, TransversalOp):
        if fixed.n != code.n:
            raise CodeError(f"transversal op on {fixed.n} qubits for n={code.n}")
        known = fixed.t_powers
        known_cols, free_cols = cols[nl:], cols[:nl]
    else:
        raise TypeError(f"expected LogicalGate or TransversalOp, got {type(fixed).__name__}")
    nsub = system.nhat.nrows
    rhs = [(-sum(col[i] * x for col, x in zip(known_cols, known))) % MODULUS for i in range(nsub)]
    a = Z8Matrix(tuple(tuple(col[i] for col in free_cols) for i in range(nsub)), len(free_cols))
    sol = solve_linear(a, rhs)
    if sol is None:
        return None
    x, _ = sol
    full = tuple(known) + tuple(x) if isinstance(fixed, LogicalGate) else tuple(x) + tuple(known)
    return system.split(full)


# file formats


def parse_code(text: str) -> CssCode:
    """Parse "n <int>", then LOGICAL_X and STAB_X sections of bitstring rows."""
    n = None
    section = None
    rows: dict[str, list[str]] = {"LOGICAL_X": [], "STAB_X": []}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n" and len(parts) == 2:
            if not parts[1].isdigit():
                raise CodeError(f"line {lineno}: bad qubit count {parts[1]!r}")
            n = int(parts[1])
        elif line in rows:
            section = line
        elif section is None:
            raise CodeError(f"line {lineno}: row outside LOGICAL_X/STAB_X section")
        else:
            if set(line) - {"0", "1"}:
                raise CodeError(f"line {lineno}: expected a bitstring, got {line!r}")
            if n is not None and len(line) != n:
                raise CodeError(f"line {lineno}: row has {len(line)} bits, expected n={n}")
            rows[section].append(line)
    if n is None:
        raise CodeError("missing 'n <int>' line")
    try:
        lx = parse_matrix("\n".join(rows["LOGICAL_X"]))
        sx = parse_matrix("\n".join(rows["STAB_X"]))
    except BitMatrixError as e:
        raise CodeError(str(e)) from None
    lx = lx if lx.nrows else BitMatrix([], n)
    sx = sx if sx.nrows else BitMatrix([], n)
    return CssCode(lx, sx)


def format_code(code: CssCode) -> str:
    out = [f"n {code.n}", "LOGICAL_X"]
    out += [bitstring(r, code.n) for r in code.logical_x.rows]
    out += ["STAB_X"] + [bitstring(r, code.n) for r in code.stab_x.rows]
    return "\n".join(out) + "\n"


def parse_logical_gate(text: str, k: int) -> LogicalGate:
    """Lines "subset-bitstring coefficient"; repeated subsets add up."""
    coeffs: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or set(parts[0]) - {"0", "1"} or not parts[1].isdigit():
            raise CodeError(f"line {lineno}: expected '<bitstring> <coeff>', got {line!r}")
        if len(parts[0]) != k:
            raise CodeError(f"line {lineno}: subset has {len(parts[0])} bits, code has k={k}")
        s = pack([int(ch) for ch in parts[0]])
        if s == 0:
            continue
        coeffs[s] = coeffs.get(s, 0) + int(parts[1])
    return LogicalGate(k, coeffs)


def format_logical_gate(h: LogicalGate) -> str:
    return "\n".join(f"{bitstring(s, h.k)} {c}" for s, c in h.coeffs.items())


def parse_transversal_op(text: str, n: int | None = None) -> TransversalOp:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) != 1 or not lines[0].isdigit() or set(lines[0]) - set("01234567"):
        raise CodeError("transversal op must be a single line of digits 0-7")
    op = TransversalOp(tuple(int(ch) for ch in lines[0]))
    if n is not None and op.n != n:
        raise CodeError(f"transversal op has {op.n} entries, code has n={n}")
    return op


def format_transversal_op(p: TransversalOp) -> str:
    return "".join(str(t) for t in p.t_powers)


def reed_muller_15() -> CssCode:
    """[[15,1,3]]: qubits are the nonzero 4-bit points, logical X on all of them."""
    pts = range(1, 16)
    logical = BitMatrix([(1 << 15) - 1], 15)
    stabs = BitMatrix([sum(1 << (p - 1) for p in pts if (p >> i) & 1) for i in range(4)], 15)
    return CssCode(logical, stabs)


def colour_code_8() -> CssCode:
    """[[8,3,2]]: qubits are the 3-bit points; logical X_i on x_i, one all-ones stabiliser."""
    logical = BitMatrix([sum(1 << p for p in range(8) if (p >> i) & 1) for i in range(3)], 8)
    return CssCode(logical, BitMatrix([(1 << 8) - 1], 8))


def all_subsets_gate(k: int, coeff: int = 1) -> LogicalGate:
    return LogicalGate(k, {s: coeff for s in range(1, 1 << k)})


def iter_words(k: int) -> Iterable[tuple[int, ...]]:
    return product((0, 1), repeat=k)
