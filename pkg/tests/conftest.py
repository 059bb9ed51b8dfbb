import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from spidernest.bitmat import BitMatrix

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

# the 15 nonzero 4-bit rows
NONZERO4_ROWS = list(range(1, 16))


@pytest.fixture
def nonzero4():
    return BitMatrix(NONZERO4_ROWS, 4)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@st.composite
def bit_matrices(draw, max_rows=12, max_cols=6, min_cols=0):
    ncols = draw(st.integers(min_cols, max_cols))
    rows = draw(st.lists(st.integers(0, (1 << ncols) - 1), max_size=max_rows))
    return BitMatrix(rows, ncols)


def random_matrix(rng, nrows, ncols):
    return BitMatrix([int(x) for x in rng.integers(0, 1 << ncols, size=nrows)], ncols)


# acceptance results, printed once at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
