"""Spider-nest matrices and certificates that a triorthogonal gadget set is the identity.

The reduction writes the gadget indicator of ``M`` as a sum of monomials,
appends one nest matrix per monomial (each itself triorthogonal), and checks
that every row of the combined matrix now occurs an even number of times, so
the fused result only has Clifford (pi/2-multiple) angles left.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bitmat import BitMatrix, format_matrix, parse_matrix
from .config import DEFAULT_LIMITS
from .phasepoly import (GateClass, PhasePolynomial, classify, format_gadgets, from_rows, fuse,
                        oracle_phases, parse_gadgets)
from .triortho import gadget_indicator, is_triorthogonal

MAX_NEST_VARS = 20
CERT_ORACLE_VARS = 12


class NestError(ValueError):
    pass


def b_matrix(n: int) -> BitMatrix:
    """All 2^n bitstrings as rows; row ``i`` is ``i`` in binary with x1 least significant."""
    if not 0 <= n <= MAX_NEST_VARS:
        raise NestError(f"B_n needs 0 <= n <= {MAX_NEST_VARS}, got {n}")
    return BitMatrix(range(1 << n), n)


def nest_matrix(k: int, n: int) -> BitMatrix:
    """``(1 | B_n)``: gadgets on all of the first ``k`` wires and every subset of the last ``n``."""
    if k < 0:
        raise NestError(f"k must be non-negative, got {k}")
    if k + n > 1 << 16:
        raise NestError("nest matrix too wide")
    ones = (1 << k) - 1
    return BitMatrix([ones | (i << k) for i in b_matrix(n).rows], k + n)


def monomial_nest(s: int | frozenset[int] | set[int] | tuple[int, ...], m: int) -> BitMatrix:
    """Triorthogonal nest on ``m`` wires whose indicator is ``prod_{i in s} x_i``.

    ``s`` is a packed mask or a collection of 0-based variable indices.
    """
    mask = s if isinstance(s, int) else sum(1 << i for i in set(s))
    if mask >> m:
        raise NestError(f"monomial uses variables outside the {m} wires")
    k = mask.bit_count()
    if k > m - 4:
        raise NestError(f"degree {k} monomial needs at least {k + 4} wires, got {m}")
    rest = [j for j in range(m) if not (mask >> j) & 1]
    rows = []
    for i in range(1 << len(rest)):
        r = mask
        for t, j in enumerate(rest):
            if (i >> t) & 1:
                r |= 1 << j
        rows.append(r)
    return BitMatrix(rows, m)


@dataclass(frozen=True)
class NestCertificate:
    target: BitMatrix
    monomials: tuple[int, ...] = ()
    nest_matrices: tuple[BitMatrix, ...] = ()
    residual: PhasePolynomial = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.residual is None:
            object.__setattr__(self, "residual", PhasePolynomial(self.target.ncols))

    def combined(self) -> BitMatrix:
        return self.target.vstack(*self.nest_matrices)


def decompose_identity(m: BitMatrix) -> NestCertificate:
    """Certificate that the pi/4 gadgets in the rows of ``m`` compose to the identity.

    Zero rows are global phases and are dropped.
    """
    m = m.nonzero_rows()
    if not is_triorthogonal(m):
        raise NestError("matrix is not triorthogonal")
    n = m.ncols
    monos = tuple(gadget_indicator(m).ordered())
    nests = tuple(monomial_nest(s, n) for s in monos)
    residual = fuse(from_rows(m.vstack(*nests)))
    return NestCertificate(m, monos, nests, residual)


def verify_certificate(c: NestCertificate, oracle_vars: int = CERT_ORACLE_VARS) -> bool:
    """Recheck a certificate from scratch; False on any violation."""
    n = c.target.ncols
    if len(c.monomials) != len(c.nest_matrices) or c.residual.num_vars != n:
        return False
    if any(nm.ncols != n for nm in c.nest_matrices):
        return False
    for s, nm in zip(c.monomials, c.nest_matrices):
        if gadget_indicator(nm).monomials != frozenset([s]):
            return False
        if not is_triorthogonal(nm):
            return False
    combined = c.combined()
    if not gadget_indicator(combined).is_zero():
        return False
    if fuse(from_rows(combined)) != fuse(c.residual):
        return False
    if any(coeff % 2 for _, coeff in c.residual.terms):
        return False
    if classify(c.residual) not in (GateClass.IDENTITY, GateClass.CLIFFORD):
        return False
    if n <= min(oracle_vars, DEFAULT_LIMITS.oracle_cap):
        total = from_rows(combined) + c.residual.negate()
        if oracle_phases(total).any():
            return False
        if oracle_phases(from_rows(c.target)).any():
            return False
    return True


def format_certificate(c: NestCertificate) -> str:
    out = [f"TARGET {c.target.ncols}", format_matrix(c.target)]
    for i, (s, nm) in enumerate(zip(c.monomials, c.nest_matrices)):
        bits = "".join("1" if (s >> j) & 1 else "0" for j in range(c.target.ncols))
        out += [f"MONOMIAL {i}", bits, f"NEST {i}", format_matrix(nm)]
    out += ["RESIDUAL", format_gadgets(c.residual)]
    return "\n".join(line for line in out if line != "") + "\n"


def parse_certificate(text: str) -> NestCertificate:
    sections: list[tuple[str, list[str]]] = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head = line.split()
        if head[0] == "TARGET" and (len(head) == 1 or len(head) == 2 and head[1].isdigit()):
            width = int(head[1]) if len(head) == 2 else None
            sections.append((head[0], []))
        elif head[0] == "RESIDUAL" and len(head) == 1:
            sections.append((head[0], []))
        elif head[0] in ("MONOMIAL", "NEST") and len(head) == 2 and head[1].isdigit():
            sections.append((line, []))
        elif not sections:
            raise NestError(f"line {lineno}: content before the TARGET section")
        else:
            sections[-1][1].append(line)
    if not sections or sections[0][0] != "TARGET":
        raise NestError("certificate must start with a TARGET section")
    target = parse_matrix("\n".join(sections[0][1]))
    if not target.nrows:
        # an empty target carries no width of its own
        widths = [len(body[0].split()[0]) for _, body in sections[1:] if body]
        target = BitMatrix([], width if width is not None else (widths[0] if widths else 0))
    elif width is not None and width != target.ncols:
        raise NestError(f"TARGET declares {width} columns but rows have {target.ncols}")
    n = target.ncols
    monos: list[int] = []
    nests: list[BitMatrix] = []
    residual = PhasePolynomial(n)
    for name, body in sections[1:]:
        if name.startswith("MONOMIAL"):
            if len(body) != 1 or len(body[0]) != n or set(body[0]) - {"0", "1"}:
                raise NestError(f"{name}: expected one {n}-bit string")
            monos.append(sum(1 << j for j, ch in enumerate(body[0]) if ch == "1"))
        elif name.startswith("NEST"):
            nm = parse_matrix("\n".join(body))
            nests.append(nm if nm.nrows else BitMatrix([], n))
        else:
            residual = parse_gadgets("\n".join(body), n)
    return NestCertificate(target, tuple(monos), tuple(nests), residual)
