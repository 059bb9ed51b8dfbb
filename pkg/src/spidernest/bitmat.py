"""Linear algebra over F2 on bit-packed rows.

Row ``i`` of a :class:`BitMatrix` is stored as a Python int whose bit ``j`` is
the entry in column ``j``. Column 0 is the leftmost character of the text
format, and corresponds to the variable ``x1`` everywhere else in the package.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MAX_DIM = 1 << 16

BitVector = tuple[int, ...]


class BitMatrixError(ValueError):
    pass


class BitMatrix:
    """Immutable matrix over F2. Duplicate rows are meaningful and kept."""

    __slots__ = ("_rows", "_ncols", "__dict__")

    def __init__(self, rows: Iterable[int], ncols: int):
        rows = tuple(int(r) for r in rows)
        if ncols < 0 or ncols > MAX_DIM or len(rows) > MAX_DIM:
            raise BitMatrixError(f"dimensions {len(rows)}x{ncols} outside [0, {MAX_DIM}]")
        limit = 1 << ncols
        for r in rows:
            if r < 0 or r >= limit:
                raise BitMatrixError(f"row {r:#b} does not fit in {ncols} columns")
        self._rows = rows
        self._ncols = ncols

    # construction

    @classmethod
    def from_bits(cls, rows: Iterable[Sequence[int] | str], ncols: int | None = None) -> "BitMatrix":
        """Build from rows given as 0/1 sequences or '0'/'1' strings."""
        packed = []
        width = ncols
        for row in rows:
            bits = [int(c) for c in row]
            if width is None:
                width = len(bits)
            if len(bits) != width:
                raise BitMatrixError(f"ragged rows: expected {width} entries, got {len(bits)}")
            if any(b not in (0, 1) for b in bits):
                raise BitMatrixError(f"non-binary entry in row {row!r}")
            packed.append(pack(bits))
        return cls(packed, width or 0)

    @classmethod
    def from_array(cls, arr) -> "BitMatrix":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise BitMatrixError("expected a 2-d array")
        return cls.from_bits(arr.astype(np.int64) % 2, arr.shape[1])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls([0] * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls([1 << i for i in range(n)], n)

    # accessors

    @property
    def rows(self) -> tuple[int, ...]:
        """Packed rows."""
        return self._rows

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self._rows), self._ncols)

    def row(self, i: int) -> BitVector:
        return unpack(self._rows[i], self._ncols)

    @cached_property
    def columns(self) -> tuple[int, ...]:
        """Packed columns: bit ``l`` of ``columns[j]`` is entry (l, j)."""
        cols = [0] * self._ncols
        for l, r in enumerate(self._rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << l
                r ^= low
        return tuple(cols)

    def column(self, j: int) -> BitVector:
        return unpack(self.columns[j], self.nrows)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not 0 <= j < self._ncols:
            raise IndexError(j)
        return (self._rows[i] >> j) & 1

    def __len__(self) -> int:
        return len(self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self._ncols == other._ncols and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._ncols, self._rows))

    def __repr__(self) -> str:
        return f"BitMatrix({[bitstring(r, self._ncols) for r in self._rows]!r}, ncols={self._ncols})"

    def __str__(self) -> str:
        return format_matrix(self)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return mat_mul(self, other)

    # derived matrices

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        for i, r in enumerate(self._rows):
            out[i] = unpack(r, self._ncols)
        return out

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.columns, self.nrows)

    T = property(transpose)

    def vstack(self, *others: "BitMatrix") -> "BitMatrix":
        rows = list(self._rows)
        for o in others:
            if o.ncols != self._ncols:
                raise BitMatrixError(f"cannot stack {o.ncols} columns onto {self._ncols}")
            rows.extend(o.rows)
        return BitMatrix(rows, self._ncols)

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if other.nrows != self.nrows:
            raise BitMatrixError(f"row count mismatch {self.nrows} vs {other.nrows}")
        shift = self._ncols
        return BitMatrix([a | (b << shift) for a, b in zip(self._rows, other.rows)], shift + other.ncols)

    def select_columns(self, cols: Sequence[int]) -> "BitMatrix":
        """New matrix whose column ``t`` is column ``cols[t]`` of this one."""
        rows = []
        for r in self._rows:
            rows.append(sum(((r >> c) & 1) << t for t, c in enumerate(cols)))
        return BitMatrix(rows, len(cols))

    def without_row(self, i: int) -> "BitMatrix":
        return BitMatrix(self._rows[:i] + self._rows[i + 1:], self._ncols)

    def nonzero_rows(self) -> "BitMatrix":
        return BitMatrix([r for r in self._rows if r], self._ncols)


def pack(bits: Sequence[int]) -> int:
    out = 0
    for j, b in enumerate(bits):
        if b:
            out |= 1 << j
    return out


def unpack(word: int, width: int) -> BitVector:
    return tuple((word >> j) & 1 for j in range(width))


def bitstring(word: int, width: int) -> str:
    return "".join("1" if (word >> j) & 1 else "0" for j in range(width))


def weight(word: int) -> int:
    return word.bit_count()


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Product ``a @ b`` over F2."""
    if a.ncols != b.nrows:
        raise BitMatrixError(f"cannot multiply {a.shape} by {b.shape}")
    brows = b.rows
    out = []
    for r in a.rows:
        acc = 0
        while r:
            low = r & -r
            acc ^= brows[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return BitMatrix(out, b.ncols)


def column_product_word(m: BitMatrix, cols: Iterable[int]) -> int:
    """Entrywise AND of the selected columns, packed over rows."""
    cols = list(cols)
    if not cols:
        raise BitMatrixError("column_product needs at least one column")
    acc = (1 << m.nrows) - 1
    for j in cols:
        if not 0 <= j < m.ncols:
            raise BitMatrixError(f"column {j} out of range for {m.ncols} columns")
        acc &= m.columns[j]
    return acc


def column_product(m: BitMatrix, cols: Iterable[int]) -> BitVector:
    return unpack(column_product_word(m, cols), m.nrows)


def _echelon(rows: Iterable[int]) -> list[tuple[int, int]]:
    """Reduced row echelon form as (pivot column, row) pairs."""
    basis: list[tuple[int, int]] = []
    for r in rows:
        for p, b in basis:
            if (r >> p) & 1:
                r ^= b
        if r:
            p = (r & -r).bit_length() - 1
            basis = [(q, b ^ r if (b >> p) & 1 else b) for q, b in basis]
            basis.append((p, r))
    return basis


def rank(a: BitMatrix) -> int:
    return len(_echelon(a.rows))


def rank_of_words(words: Iterable[int]) -> int:
    return len(_echelon(words))


def kernel_basis(a: BitMatrix) -> list[BitVector]:
    """Basis of ``{v : a @ v = 0}``, one free column per vector."""
    basis = _echelon(a.rows)
    pivots = {p for p, _ in basis}
    out = []
    for f in range(a.ncols):
        if f in pivots:
            continue
        v = 1 << f
        for p, b in basis:
            if (b >> f) & 1:
                v |= 1 << p
        out.append(unpack(v, a.ncols))
    return out


def in_row_span(a: BitMatrix, word: int) -> bool:
    for p, b in _echelon(a.rows):
        if (word >> p) & 1:
            word ^= b
    return word == 0


def inverse(a: BitMatrix) -> BitMatrix:
    """Inverse of a square invertible matrix over F2."""
    n = a.ncols
    if a.nrows != n:
        raise BitMatrixError(f"matrix {a.shape} is not square")
    aug = [r | (1 << (n + i)) for i, r in enumerate(a.rows)]
    mask = (1 << n) - 1
    for c in range(n):
        piv = next((i for i in range(c, n) if (aug[i] >> c) & 1), None)
        if piv is None:
            raise BitMatrixError("matrix is singular over F2")
        aug[c], aug[piv] = aug[piv], aug[c]
        for i in range(n):
            if i != c and (aug[i] >> c) & 1:
                aug[i] ^= aug[c]
    return BitMatrix([(r >> n) & mask for r in aug], n)


def parse_matrix(text: str) -> BitMatrix:
    """Parse the line-per-row '0'/'1' text format; '#' lines and blanks are skipped."""
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if set(line) - {"0", "1"}:
            raise BitMatrixError(f"line {lineno}: expected only '0'/'1', got {line!r}")
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise BitMatrixError(f"line {lineno}: row has {len(line)} entries, expected {width}")
        rows.append(pack([int(c) for c in line]))
    return BitMatrix(rows, width or 0)


def format_matrix(m: BitMatrix) -> str:
    return "\n".join(bitstring(r, m.ncols) for r in m.rows)
