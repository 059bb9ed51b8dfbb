"""One test per acceptance criterion; each records a pass/fail line for the run summary."""

import time
from itertools import product
from math import comb

import numpy as np
import pytest

from conftest import ACCEPTANCE
from spidernest.bitmat import BitMatrix
from spidernest.circuits import (Circuit, brute_force_equivalent, ccz_seven_t, circuits_equivalent, gate, perturb,
                                 random_circuit, rewrite_equivalent)
from spidernest.css import (LogicalGate, TransversalOp, all_subsets_gate, build_nhat, check_transversal,
                            colour_code_8, generator_vectors, oracle_transversal, reed_muller_15)
from spidernest.nests import decompose_identity, nest_matrix, verify_certificate
from spidernest.phasepoly import GateClass, classify, classify_table, from_rows, oracle_phases
from spidernest.triortho import (degree_check, gadget_indicator, indicator_polynomial, is_semi_triorthogonal,
                                 is_triorthogonal, random_semi_triorthogonal, random_triorthogonal,
                                 rm_dual_verify)
from spidernest.zring import Z8Matrix, howell_form, kernel_generators, solve_linear, span

SEED = 7


def record(num, ok, detail):
    ACCEPTANCE[num] = (bool(ok), detail)
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def mixed_matrix(rng, n, max_rows):
    """Uniform rows a third of the time, else semi-triorthogonal or triorthogonal constructions."""
    kind = int(rng.integers(0, 3))
    if kind and n:
        for _ in range(20):
            m = (random_semi_triorthogonal(rng, n, duplicate_pairs=int(rng.integers(0, 3))) if kind == 1
                 else random_triorthogonal(rng, n))
            if m.nrows <= max_rows:
                return m
    rows = rng.integers(0, 1 << n, size=int(rng.integers(0, max_rows + 1)))
    return BitMatrix([int(r) for r in rows], n)


def test_nonzero4_matrix_is_identity():
    t0 = time.perf_counter()
    m = BitMatrix(range(1, 16), 4)
    tri = is_triorthogonal(m)
    cls = classify(from_rows(m))
    table = oracle_phases(from_rows(m))
    elapsed = time.perf_counter() - t0
    ok = tri and cls is GateClass.IDENTITY and not table.any() and len(table) == 16 and elapsed < 1
    record(1, ok, f"15-row matrix triorthogonal={tri} class={cls.value} oracle zero={not table.any()} "
                  f"({elapsed:.3f}s < 1s)")


def test_s4_rule():
    m = nest_matrix(1, 4)
    p = indicator_polynomial(m)
    ok = is_triorthogonal(m) and str(p) == "x1" and p.degree() == 1 and m.ncols == 5
    bad = []
    for i in range(m.nrows):
        d = m.without_row(i)
        table_cls = classify_table(oracle_phases(from_rows(d)))
        if not (classify(from_rows(d)) is GateClass.NON_CLIFFORD is table_cls
                and not is_semi_triorthogonal(d)):
            bad.append(i)
    ok = ok and not bad
    record(2, ok, f"nest (1|B_4) triorthogonal with indicator {p}; "
                  f"{m.nrows - len(bad)}/{m.nrows} single-row deletions non-Clifford (oracle agrees)")


def test_classification_matches_triorthogonality():
    rng = np.random.default_rng(SEED)
    t0 = time.perf_counter()
    bad = 0
    seen = {c: 0 for c in GateClass}
    for _ in range(1000):
        m = mixed_matrix(rng, int(rng.integers(0, 7)), 40)
        cls = classify(from_rows(m))
        seen[cls] += 1
        bad += (cls is GateClass.IDENTITY) != is_triorthogonal(m)
        bad += (cls is not GateClass.NON_CLIFFORD) != is_semi_triorthogonal(m)
    elapsed = time.perf_counter() - t0
    mix = ", ".join(f"{c.value}={k}" for c, k in seen.items())
    record(3, bad == 0 and elapsed < 10,
           f"1000 matrices (n<=6, <=40 rows; {mix}): {bad} discrepancies ({elapsed:.2f}s < 10s)")


def test_degree_bound_matches_semi_triorthogonality():
    rng = np.random.default_rng(SEED + 1)
    bad = 0
    semis = 0
    for _ in range(500):
        n = int(rng.integers(0, 11))
        m = mixed_matrix(rng, n, 1200)
        semi = is_semi_triorthogonal(m)
        semis += semi
        p = gadget_indicator(m)
        # the zero polynomial has degree -infinity and meets every bound
        bound = p.is_zero() or p.degree() <= n - 4
        bad += semi != bound or degree_check(m) != (p.degree(), semi)
    record(4, bad == 0, f"500 matrices (n<=10, {semis} semi-triorthogonal): {bad} discrepancies "
                        "between the degree bound and the weight test")


def test_reed_muller_duality():
    failures = []
    for m in range(1, 7):
        for r in range(m):
            dims = sum(comb(m, d) for d in range(r + 1)) + sum(comb(m, d) for d in range(m - r))
            if not rm_dual_verify(r, m) or dims != 1 << m:
                failures.append((r, m))
    record(5, not failures, f"RM(r,m) dual = RM(m-r-1,m) and dimensions add to 2^m for 0<=r<m<=6; "
                            f"failures {failures}")


def test_nest_reduction_certificates():
    rng = np.random.default_rng(SEED + 2)
    bad = 0
    oracle_checked = 0
    monomials = 0
    for i in range(200):
        n = int(rng.integers(0, 9))
        m = random_triorthogonal(rng, n, duplicate_pairs=int(rng.integers(0, 3)))
        try:
            cert = decompose_identity(m)
        except ValueError:
            bad += 1
            continue
        monomials += len(cert.monomials)
        bad += not verify_certificate(cert)
        oracle_checked += n <= 12
    record(6, bad == 0, f"200 triorthogonal matrices (n<=8, {monomials} nests total): {bad} failures; "
                        f"{oracle_checked} cross-checked against the full phase oracle")


def test_rm15_transversal_t():
    t0 = time.perf_counter()
    code = reed_muller_15()
    h, p = LogicalGate(1, {1: 1}), TransversalOp.ones(15)
    tri = check_transversal(code, h, p)
    oracle = oracle_transversal(code, h, p)
    system = build_nhat(code)
    ones = (1,) * system.nhat.ncols
    in_kernel = not any(system.nhat.apply(ones))
    gens = generator_vectors(code).generators
    gmat = Z8Matrix(tuple(tuple(g[i] for g in gens) for i in range(len(ones))), len(gens))
    member = solve_linear(gmat, ones) is not None
    elapsed = time.perf_counter() - t0
    ok = tri and oracle and in_kernel and member and elapsed < 5
    record(7, ok, f"[[15,1,3]] T pattern: triorthogonal={tri} oracle={oracle} (2*2^4 pairs) "
                  f"N-hat.1=0 {in_kernel} in generated module {member} ({elapsed:.2f}s < 5s)")


def test_colour_code_transversal_ccz():
    code = colour_code_8()
    h, p = all_subsets_gate(3), TransversalOp.ones(8)
    tri = check_transversal(code, h, p)
    oracle = oracle_transversal(code, h, p)
    record(8, tri and oracle, f"[[8,3,2]] all 7 logical gadgets with all-ones T: triorthogonal={tri} "
                              f"oracle={oracle} (2^4 pairs)")


def _z8_checks(a, b):
    brute_kernel = {v for v in product(range(8), repeat=a.ncols) if not any(a.apply(v))}
    images = {a.apply(v) for v in product(range(8), repeat=a.ncols)}
    sol = solve_linear(a, b)
    return (span(howell_form(a).entries, a.ncols) == span(a.entries, a.ncols)
            and span(kernel_generators(a).generators, a.ncols) == brute_kernel
            and (sol is not None) == (tuple(b) in images)
            and (sol is None or a.apply(sol[0]) == tuple(b)))


def test_z8_algebra():
    rng = np.random.default_rng(SEED + 3)
    cases = []
    # every 1x1, 1x2 and 2x1 matrix, then random ones up to 3x3
    for shape in ((1, 1), (1, 2), (2, 1)):
        for flat in product(range(8), repeat=shape[0] * shape[1]):
            rows = [flat[i * shape[1]:(i + 1) * shape[1]] for i in range(shape[0])]
            cases.append(Z8Matrix.from_rows(rows, shape[1]))
    for _ in range(200):
        r, c = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        cases.append(Z8Matrix.from_rows(rng.integers(0, 8, size=(r, c)).tolist(), c))
    bad = sum(not _z8_checks(a, tuple(int(x) for x in rng.integers(0, 8, size=a.nrows))) for a in cases)
    record(9, bad == 0, f"{len(cases)} Z8 matrices (<=3 columns, 200 random): span, kernel and "
                        f"solvability vs enumeration, {bad} discrepancies")


def test_circuit_equivalence():
    t0 = time.perf_counter()
    native = Circuit(3, (gate("ccz", 0, 1, 2),))
    ccz_ok = circuits_equivalent(ccz_seven_t(), native)
    rng = np.random.default_rng(SEED + 4)
    bad = 0
    equivalent = 0
    for i in range(500):
        n = int(rng.integers(1, 6))
        c1 = random_circuit(rng, n, int(rng.integers(0, 20)), ("cnot", "t", "tdg", "s", "z", "ccz"))
        c2 = rewrite_equivalent(rng, c1) if i % 2 == 0 else perturb(rng, c1)
        got = circuits_equivalent(c1, c2)
        equivalent += got
        bad += got != brute_force_equivalent(c1, c2)
    elapsed = time.perf_counter() - t0
    record(10, ccz_ok and bad == 0 and elapsed < 30,
           f"7-T CCZ == native CCZ: {ccz_ok}; 500 circuit pairs on <=5 qubits ({equivalent} equivalent): "
           f"{bad} disagreements with basis simulation ({elapsed:.2f}s < 30s)")


@pytest.fixture(autouse=True, scope="module")
def _all_criteria_recorded():
    yield
    missing = set(range(1, 11)) - set(ACCEPTANCE)
    for num in missing:
        ACCEPTANCE[num] = (False, "not run")
