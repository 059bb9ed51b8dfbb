"""CNOT+T circuits: parsing, phase folding and equivalence up to global phase."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bitmat import BitMatrix
from .phasepoly import PhasePolynomial, equal
from .zring import MODULUS

# single-qubit phase gates and their pi/4 multiples
PHASE_GATES = {"t": 1, "tdg": 7, "s": 2, "sdg": 6, "z": 4}
ARITY = {"cnot": 2, "cz": 2, "ccz": 3, **{g: 1 for g in PHASE_GATES}}

# gadget expansions over the parities of the arguments: (argument mask, coeff)
CZ_GADGETS = ((0b01, 2), (0b10, 2), (0b11, 6))
CCZ_GADGETS = ((0b001, 1), (0b010, 1), (0b100, 1), (0b011, 7), (0b110, 7), (0b101, 7), (0b111, 1))


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]

    def __str__(self) -> str:
        return " ".join([self.name, *map(str, self.qubits)])


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        for g in self.gates:
            _validate(g, self.num_qubits)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.num_qubits != self.num_qubits:
            raise CircuitError("qubit count mismatch")
        return Circuit(self.num_qubits, self.gates + other.gates)

    def __str__(self) -> str:
        return format_circuit(self)


def _validate(g: Gate, n: int) -> None:
    if g.name not in ARITY:
        raise CircuitError(f"unknown gate {g.name!r}")
    if len(g.qubits) != ARITY[g.name]:
        raise CircuitError(f"{g.name} takes {ARITY[g.name]} qubits, got {len(g.qubits)}")
    for q in g.qubits:
        if not 0 <= q < n:
            raise CircuitError(f"qubit {q} out of range for {n} qubits")
    if len(set(g.qubits)) != len(g.qubits):
        raise CircuitError(f"{g.name} arguments must be distinct, got {g.qubits}")


def gate(name: str, *qubits: int) -> Gate:
    return Gate(name, tuple(qubits))


@dataclass(frozen=True)
class PhaseData:
    """``U|x> = exp(i pi/4 phases(x)) |linear x>``, phases over the input bits."""

    linear: BitMatrix
    phases: PhasePolynomial


def parse_circuit(text: str) -> Circuit:
    n = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if n is None:
            if head != "qubits" or len(parts) != 2 or not parts[1].isdigit():
                raise CircuitError(f"line {lineno}: expected header 'qubits <n>'")
            n = int(parts[1])
            continue
        if head not in ARITY:
            raise CircuitError(f"line {lineno}: unknown gate {head!r}")
        try:
            qubits = tuple(int(p) for p in parts[1:])
        except ValueError:
            raise CircuitError(f"line {lineno}: qubit indices must be integers") from None
        g = Gate(head, qubits)
        try:
            _validate(g, n)
        except CircuitError as e:
            raise CircuitError(f"line {lineno}: {e}") from None
        gates.append(g)
    if n is None:
        raise CircuitError("missing 'qubits <n>' header")
    return Circuit(n, tuple(gates))


def format_circuit(c: Circuit) -> str:
    return "\n".join([f"qubits {c.num_qubits}", *map(str, c.gates)]) + "\n"


def _expand(parities: Sequence[int], pattern) -> list[tuple[int, int]]:
    out = []
    for mask, coeff in pattern:
        s = 0
        for t, p in enumerate(parities):
            if (mask >> t) & 1:
                s ^= p
        out.append((s, coeff))
    return out


def extract_phase_data(c: Circuit) -> PhaseData:
    """Fold the circuit into a layer of phase gadgets followed by a linear reversible map."""
    parity = [1 << q for q in range(c.num_qubits)]
    terms: list[tuple[int, int]] = []
    for g in c.gates:
        q = g.qubits
        if g.name == "cnot":
            parity[q[1]] ^= parity[q[0]]
        elif g.name in PHASE_GATES:
            terms.append((parity[q[0]], PHASE_GATES[g.name]))
        elif g.name == "cz":
            terms += _expand([parity[i] for i in q], CZ_GADGETS)
        elif g.name == "ccz":
            terms += _expand([parity[i] for i in q], CCZ_GADGETS)
    return PhaseData(BitMatrix(parity, c.num_qubits), PhasePolynomial(c.num_qubits, tuple(terms)))


def circuits_equivalent(c1: Circuit, c2: Circuit) -> bool:
    """Same unitary up to global phase."""
    if c1.num_qubits != c2.num_qubits:
        raise CircuitError(f"qubit count mismatch: {c1.num_qubits} vs {c2.num_qubits}")
    d1, d2 = extract_phase_data(c1), extract_phase_data(c2)
    return d1.linear == d2.linear and equal(d1.phases, d2.phases)


def simulate_basis(c: Circuit) -> tuple[np.ndarray, np.ndarray]:
    """Gate-by-gate action on every basis state: (output index, phase mod 8) per input."""
    n = c.num_qubits
    state = np.arange(1 << n, dtype=np.int64)
    phase = np.zeros(1 << n, dtype=np.int64)

    def bit(q):
        return (state >> q) & 1

    for g in c.gates:
        q = g.qubits
        if g.name == "cnot":
            state = state ^ (bit(q[0]) << q[1])
        elif g.name in PHASE_GATES:
            phase += PHASE_GATES[g.name] * bit(q[0])
        elif g.name == "cz":
            phase += 4 * (bit(q[0]) & bit(q[1]))
        elif g.name == "ccz":
            phase += 4 * (bit(q[0]) & bit(q[1]) & bit(q[2]))
    return state, phase % MODULUS


def brute_force_equivalent(c1: Circuit, c2: Circuit) -> bool:
    """Equivalence up to global phase by simulating all basis states."""
    s1, p1 = simulate_basis(c1)
    s2, p2 = simulate_basis(c2)
    if not np.array_equal(s1, s2):
        return False
    diff = (p1 - p2) % MODULUS
    return bool((diff == diff[0]).all())


def ccz_seven_t(a: int = 0, b: int = 1, c: int = 2, num_qubits: int = 3) -> Circuit:
    """CCZ as seven T/T-dagger gates, each gadget conjugated by CNOTs."""
    gates = [gate("t", a), gate("t", b), gate("t", c)]
    for x, y in ((a, b), (b, c), (a, c)):
        gates += [gate("cnot", x, y), gate("tdg", y), gate("cnot", x, y)]
    gates += [gate("cnot", a, c), gate("cnot", b, c), gate("t", c), gate("cnot", b, c), gate("cnot", a, c)]
    return Circuit(num_qubits, tuple(gates))


def random_circuit(rng: np.random.Generator, num_qubits: int, length: int,
                   names: Sequence[str] = ("cnot", "t", "tdg", "s", "z")) -> Circuit:
    usable = [x for x in names if ARITY[x] <= num_qubits]
    gates = []
    for _ in range(length):
        name = str(rng.choice(usable))
        qs = rng.choice(num_qubits, size=ARITY[name], replace=False)
        gates.append(Gate(name, tuple(int(q) for q in qs)))
    return Circuit(num_qubits, tuple(gates))


def _rewrite_gate(rng: np.random.Generator, g: Gate, n: int) -> list[Gate]:
    q = g.qubits
    choice = int(rng.integers(0, 4))
    if g.name == "s" and choice == 0:
        return [gate("t", *q), gate("t", *q)]
    if g.name == "z" and choice == 0:
        return [gate("s", *q), gate("s", *q)]
    if g.name == "t" and choice == 1:
        return [gate("sdg", *q), gate("t", *q), gate("s", *q)]
    if g.name == "tdg" and choice == 1:
        return [gate("t", *q)] * 7
    if g.name == "cnot" and choice == 2:
        # phases on the control commute through
        return [gate("t", q[0]), g, gate("tdg", q[0])]
    if g.name == "ccz" and choice == 0:
        return list(ccz_seven_t(*q, num_qubits=n).gates)
    return [g]


def rewrite_equivalent(rng: np.random.Generator, c: Circuit) -> Circuit:
    """A randomly rewritten circuit implementing the same unitary up to global phase."""
    gates: list[Gate] = []
    for g in c.gates:
        gates += _rewrite_gate(rng, g, c.num_qubits)
    if c.num_qubits and rng.random() < 0.5:
        q = int(rng.integers(0, c.num_qubits))
        pos = int(rng.integers(0, len(gates) + 1))
        gates[pos:pos] = [gate("t", q)] * 8
    if c.num_qubits > 1 and rng.random() < 0.5:
        a, b = (int(x) for x in rng.choice(c.num_qubits, size=2, replace=False))
        pos = int(rng.integers(0, len(gates) + 1))
        gates[pos:pos] = [gate("cnot", a, b), gate("cnot", a, b)]
    return Circuit(c.num_qubits, tuple(gates))


def perturb(rng: np.random.Generator, c: Circuit) -> Circuit:
    """Insert one random gate, usually changing the unitary."""
    extra = random_circuit(rng, c.num_qubits, 1)
    pos = int(rng.integers(0, len(c.gates) + 1))
    return Circuit(c.num_qubits, c.gates[:pos] + extra.gates + c.gates[pos:])
