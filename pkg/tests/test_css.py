from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spidernest.bitmat import BitMatrix, rank
from spidernest.css import (CodeError, CssCode, LogicalGate, TransversalOp, all_subsets_gate, build_nhat,
                            check_transversal, codeword_support, colour_code_8, format_code,
                            format_logical_gate, format_transversal_op, generator_vectors, new_code,
                            oracle_transversal, parse_code, parse_logical_gate, parse_transversal_op,
                            reed_muller_15, solve_transversal, transversality_matrix, transversal_generators, z_checks)
from spidernest.phasepoly import GateClass, classify
from spidernest.zring import Z8Matrix, solve_linear


@st.composite
def small_codes(draw, max_n=8, max_kr=5):
    n = draw(st.integers(1, max_n))
    total = draw(st.integers(1, min(n, max_kr)))
    rows = []
    while len(rows) < total:
        r = draw(st.integers(1, (1 << n) - 1))
        if rank(BitMatrix(rows + [r], n)) == len(rows) + 1:
            rows.append(r)
    k = draw(st.integers(1, total))
    return CssCode(BitMatrix(rows[:k], n), BitMatrix(rows[k:], n))


@st.composite
def gate_pairs(draw, code):
    subsets = [s for s in range(1, 1 << code.k) if s.bit_count() <= 3]
    h = LogicalGate(code.k, draw(st.dictionaries(st.sampled_from(subsets), st.integers(0, 7), max_size=4)))
    p = TransversalOp(tuple(draw(st.lists(st.integers(0, 7), min_size=code.n, max_size=code.n))))
    return h, p


def test_new_code_shapes():
    code = new_code(BitMatrix.from_bits(["1111"]), BitMatrix.from_bits(["1100"]))
    assert (code.n, code.k, code.r) == (4, 1, 1)
    assert code.physical_rows().shape == (4, 2)


def test_new_code_rejects_dependent_rows():
    with pytest.raises(CodeError):
        new_code(BitMatrix.from_bits(["1111"]), BitMatrix.from_bits(["1111"]))
    with pytest.raises(CodeError):
        new_code(BitMatrix.from_bits(["111"]), BitMatrix.from_bits(["1100"]))


def test_random_rank_deficiency_rejected(rng):
    for _ in range(50):
        n = int(rng.integers(3, 10))
        rows = [int(x) for x in rng.integers(1, 1 << n, size=3)]
        rows.append(rows[0] ^ rows[1])
        rng.shuffle(rows)
        with pytest.raises(CodeError):
            new_code(BitMatrix(rows[:1], n), BitMatrix(rows[1:], n))


def test_z_checks_orthogonal():
    for code in (reed_muller_15(), colour_code_8()):
        z = z_checks(code)
        assert z.nrows == code.n - code.k - code.r
        for zr in z.rows:
            for xr in code.logical_x.rows + code.stab_x.rows:
                assert (zr & xr).bit_count() % 2 == 0


def test_rm15_codewords():
    words = codeword_support(reed_muller_15(), (1,))
    assert len(words) == 16
    assert (1,) * 15 in words
    assert {sum(w) for w in words} == {7, 15}


def test_colour_code_zero_codewords():
    assert codeword_support(colour_code_8(), (0, 0, 0)) == {(0,) * 8, (1,) * 8}


def test_codeword_cap():
    with pytest.raises(CodeError):
        codeword_support(reed_muller_15(), (1,), cap=8)


def test_transversality_matrix_rows():
    rm = reed_muller_15()
    assert transversality_matrix(rm, LogicalGate(1, {1: 1}), TransversalOp.ones(15)).nrows == 16
    cc = colour_code_8()
    assert transversality_matrix(cc, all_subsets_gate(3), TransversalOp.ones(8)).nrows == 15


def test_rm15_transversal_t():
    rm = reed_muller_15()
    h, p = LogicalGate(1, {1: 1}), TransversalOp.ones(15)
    assert check_transversal(rm, h, p)
    assert oracle_transversal(rm, h, p)
    assert not check_transversal(rm, LogicalGate(1, {1: 2}), p)
    assert not oracle_transversal(rm, LogicalGate(1, {1: 2}), p)


def test_colour_code_transversal():
    cc = colour_code_8()
    h, p = all_subsets_gate(3), TransversalOp.ones(8)
    assert check_transversal(cc, h, p)
    assert oracle_transversal(cc, h, p)


def test_logical_gate_degree_limit():
    with pytest.raises(CodeError, match="decompose"):
        LogicalGate(4, {0b1111: 1})
    with pytest.raises(CodeError):
        LogicalGate(2, {0b100: 1})


def test_dimension_mismatch():
    with pytest.raises(CodeError):
        check_transversal(reed_muller_15(), LogicalGate(2, {}), TransversalOp.ones(15))
    with pytest.raises(CodeError):
        check_transversal(reed_muller_15(), LogicalGate(1, {}), TransversalOp.ones(14))


@settings(max_examples=150)
@given(st.data())
def test_triorthogonality_matches_oracle(data):
    code = data.draw(small_codes())
    h, p = data.draw(gate_pairs(code))
    assert check_transversal(code, h, p) == oracle_transversal(code, h, p)


def test_nhat_shapes():
    rm = build_nhat(reed_muller_15())
    assert rm.nhat.shape == (25, 16)
    cc = build_nhat(colour_code_8())
    assert cc.nhat.shape == (14, 15)
    assert {x for row in cc.nhat.entries for x in row} <= {0, 1, 2, 4}


def test_nhat_smallest_code():
    code = new_code(BitMatrix.from_bits(["1"]), BitMatrix([], 1))
    system = build_nhat(code)
    assert system.nhat.entries == ((1, 1),)


def test_nhat_cap():
    with pytest.raises(CodeError):
        build_nhat(reed_muller_15(), cap=10)


def test_nhat_kernel_is_triorthogonality():
    system = build_nhat(colour_code_8())
    rng = np.random.default_rng(5)
    for _ in range(200):
        m = tuple(int(x) for x in rng.integers(0, 8, size=system.nhat.ncols))
        h, p = system.split(m)
        assert system.join(h, p) == m
        assert (not any(system.nhat.apply(m))) == check_transversal(system.code, h, p)


def test_all_ones_in_generated_module():
    system = build_nhat(reed_muller_15())
    ones = (1,) * 16
    assert not any(system.nhat.apply(ones))
    gens = generator_vectors(reed_muller_15()).generators
    # columns are the generators; membership is solvability of G x = ones
    g = Z8Matrix(tuple(tuple(v[i] for v in gens) for i in range(16)), len(gens))
    assert solve_linear(g, ones) is not None


@pytest.mark.parametrize("make", [reed_muller_15, colour_code_8])
def test_generators_sound(make):
    code = make()
    gens = transversal_generators(code)
    assert gens
    for h, p in gens:
        assert check_transversal(code, h, p)


def test_solve_fixed_logical_t():
    rm = reed_muller_15()
    h, p = solve_transversal(rm, LogicalGate(1, {1: 1}))
    assert check_transversal(rm, h, p)
    assert h.coeffs == {1: 1}


def test_solve_fixed_pattern():
    rm = reed_muller_15()
    h, p = solve_transversal(rm, TransversalOp.ones(15))
    assert check_transversal(rm, h, p)
    assert p == TransversalOp.ones(15)
    assert h.coeffs == {1: 1}


def test_solve_zero_pattern_gives_trivial_logical():
    cc = colour_code_8()
    h, _ = solve_transversal(cc, TransversalOp.zeros(8))
    assert classify(h.phase_polynomial()) is GateClass.IDENTITY


def test_solve_infeasible():
    # a single T on one qubit of the [[15,1,3]] code is not a logical diagonal gate
    assert solve_transversal(reed_muller_15(), TransversalOp((1,) + (0,) * 14)) is None


def test_code_text_roundtrip():
    for code in (reed_muller_15(), colour_code_8()):
        assert parse_code(format_code(code)) == code
    for bad in ("LOGICAL_X\n11\n", "n 2\n11\n", "n 2\nLOGICAL_X\n111\n", "n 2\nLOGICAL_X\n1a\n"):
        with pytest.raises(CodeError):
            parse_code(bad)


def test_gate_text_formats():
    h = parse_logical_gate("# T on both\n10 1\n01 1\n10 3\n", 2)
    assert h.coeffs == {0b01: 4, 0b10: 1}
    assert parse_logical_gate(format_logical_gate(h), 2) == h
    with pytest.raises(CodeError):
        parse_logical_gate("101 1\n", 2)
    p = parse_transversal_op("1111\n", 4)
    assert format_transversal_op(p) == "1111"
    with pytest.raises(CodeError):
        parse_transversal_op("1118\n")
    with pytest.raises(CodeError):
        parse_transversal_op("111\n", 4)


def test_brute_force_over_colour_code_patterns():
    # every T-power pattern constant on the code's qubits
    cc = colour_code_8()
    for t, c in product(range(8), range(8)):
        h, p = all_subsets_gate(3, c), TransversalOp((t,) * 8)
        assert check_transversal(cc, h, p) == oracle_transversal(cc, h, p)
