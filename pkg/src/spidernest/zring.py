"""Linear algebra over Z8 via the Howell normal form.

Every nonzero element of Z8 is ``u * 2**v`` with ``u`` a unit, so the only
possible normalised pivots are 1, 2 and 4. Matrices are small (hundreds of
rows at most), so plain Python ints are used for the row operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MODULUS = 8
LOG_MODULUS = 3

# inverses of the units of Z8
_UNIT_INV = {1: 1, 3: 3, 5: 5, 7: 7}

Vector = tuple[int, ...]


class ZRingError(ValueError):
    pass


def valuation(a: int) -> int:
    """2-adic valuation in Z8, with ``valuation(0) == 3``."""
    a %= MODULUS
    if a == 0:
        return LOG_MODULUS
    return (a & -a).bit_length() - 1


@dataclass(frozen=True)
class Z8Matrix:
    entries: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        for row in self.entries:
            if len(row) != self.ncols:
                raise ZRingError(f"ragged row of length {len(row)}, expected {self.ncols}")
            if any(not 0 <= x < MODULUS for x in row):
                raise ZRingError(f"entry outside 0..{MODULUS - 1} in {row}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "Z8Matrix":
        rows = [tuple(int(x) % MODULUS for x in r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(tuple(rows), ncols)

    @classmethod
    def from_array(cls, arr) -> "Z8Matrix":
        arr = np.asarray(arr, dtype=np.int64)
        return cls.from_rows(arr.tolist(), arr.shape[1])

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), self.ncols)

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.shape)

    def apply(self, x: Sequence[int]) -> Vector:
        """Matrix-vector product mod 8."""
        if len(x) != self.ncols:
            raise ZRingError(f"vector of length {len(x)} for {self.ncols} columns")
        return tuple(sum(a * b for a, b in zip(row, x)) % MODULUS for row in self.entries)

    def transpose(self) -> "Z8Matrix":
        cols = tuple(tuple(row[j] for row in self.entries) for j in range(self.ncols))
        return Z8Matrix(cols, self.nrows)

    def __str__(self) -> str:
        return format_z8(self)


@dataclass(frozen=True)
class KernelGenerators:
    generators: tuple[Vector, ...] = field(default_factory=tuple)
    ncols: int = 0

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)


def _sub_scaled(a: list[int], b: list[int], k: int) -> list[int]:
    return [(x - k * y) % MODULUS for x, y in zip(a, b)]


def _howell_rows(rows: list[list[int]], ncols: int) -> list[list[int]]:
    pending = [r[:] for r in rows if any(r)]
    done: list[tuple[int, list[int]]] = []
    for c in range(ncols):
        live = [r for r in pending if r[c]]
        if not live:
            continue
        piv = min(live, key=lambda r: valuation(r[c]))
        pending.remove(piv)
        v = valuation(piv[c])
        unit = piv[c] >> v
        piv = [(x * _UNIT_INV[unit]) % MODULUS for x in piv]
        p = 1 << v
        rest = []
        for r in pending:
            if r[c]:
                r = _sub_scaled(r, piv, r[c] // p)
            if any(r):
                rest.append(r)
        # annihilator of the pivot: kills column c, may survive further right
        ann = [(x << (LOG_MODULUS - v)) % MODULUS for x in piv]
        if any(ann):
            rest.append(ann)
        pending = rest
        done.append((c, piv))
    # reduce entries above each pivot into [0, pivot)
    for i, (c, piv) in enumerate(done):
        p = piv[c]
        for j in range(i):
            upper = done[j][1]
            if upper[c] >= p:
                done[j] = (done[j][0], _sub_scaled(upper, piv, upper[c] // p))
    return [r for _, r in done]


def howell_form(a: Z8Matrix) -> Z8Matrix:
    """Howell normal form: pivots in {1, 2, 4}, zero rows dropped.

    Two matrices with the same row span over Z8 give identical output.
    """
    rows = _howell_rows([list(r) for r in a.entries], a.ncols)
    return Z8Matrix(tuple(tuple(r) for r in rows), a.ncols)


def kernel_generators(a: Z8Matrix) -> KernelGenerators:
    """Generators of ``{x : a x = 0 mod 8}`` as a Z8-module.

    Rows of the Howell form of ``[a^T | I]`` whose left block vanishes span
    exactly the kernel, by the Howell property.
    """
    n, m = a.ncols, a.nrows
    aug = []
    for j in range(n):
        left = [a.entries[i][j] for i in range(m)]
        aug.append(left + [1 if t == j else 0 for t in range(n)])
    gens = [tuple(r[m:]) for r in _howell_rows(aug, m + n) if not any(r[:m])]
    return KernelGenerators(tuple(gens), n)


def solve_linear(a: Z8Matrix, b: Sequence[int]) -> tuple[Vector, KernelGenerators] | None:
    """Solve ``a x = b (mod 8)``; None when no solution exists."""
    if len(b) != a.nrows:
        raise ZRingError(f"right-hand side of length {len(b)} for {a.nrows} rows")
    n, m = a.ncols, a.nrows
    # columns: [a^T block | t | identity]; rows with left block zero and t == 1
    # give x with x^T a^T - b^T = 0
    aug = []
    for j in range(n):
        left = [a.entries[i][j] for i in range(m)]
        aug.append(left + [0] + [1 if t == j else 0 for t in range(n)])
    aug.append([(-x) % MODULUS for x in b] + [1] + [0] * n)
    particular = None
    for r in _howell_rows(aug, m + 1 + n):
        if any(r[:m]):
            continue
        # first row with vanishing left block carries the smallest t pivot
        if r[m] == 1:
            particular = tuple(r[m + 1:])
        break
    if particular is None:
        return None
    return particular, kernel_generators(a)


def span(rows: Iterable[Sequence[int]], ncols: int) -> set[Vector]:
    """All Z8-combinations of ``rows`` by closure; only for tiny instances."""
    out = {tuple([0] * ncols)}
    for r in rows:
        r = tuple(x % MODULUS for x in r)
        out = {tuple((x + k * y) % MODULUS for x, y in zip(v, r)) for v in out for k in range(MODULUS)}
    return out


def parse_z8(text: str) -> Z8Matrix:
    """Parse space-separated digits 0-7, one row per line; '#' comments."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise ZRingError(f"line {lineno}: non-integer entry in {line!r}") from None
        if any(not 0 <= x < MODULUS for x in row):
            raise ZRingError(f"line {lineno}: entries must be digits 0-{MODULUS - 1}")
        if rows and len(row) != len(rows[0]):
            raise ZRingError(f"line {lineno}: row has {len(row)} entries, expected {len(rows[0])}")
        rows.append(row)
    return Z8Matrix.from_rows(rows)


def format_z8(a: Z8Matrix) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in a.entries)
