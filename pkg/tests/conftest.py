from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from wgauss.polyring import SparsePolynomial, monomial_basis
from wgauss.specs import preset

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def sextic():
    return preset("sextic")


@pytest.fixture(scope="session")
def quintic():
    return preset("quintic")


@pytest.fixture(scope="session")
def elliptic():
    return preset("elliptic-quartic")


@pytest.fixture(scope="session")
def canonical():
    return preset("canonical-genus5")


small_fractions = st.builds(
    Fraction, st.integers(-6, 6), st.integers(1, 4)
)


@st.composite
def homogeneous_polys(draw, nvars=None, degree=None, max_terms=5):
    k = draw(st.integers(2, 4)) if nvars is None else nvars
    m = draw(st.integers(0, 4)) if degree is None else degree
    basis = monomial_basis(k - 1, m)
    monos = draw(st.lists(st.sampled_from(basis), max_size=max_terms, unique=True))
    coeffs = draw(st.lists(small_fractions, min_size=len(monos), max_size=len(monos)))
    return SparsePolynomial(k, dict(zip(monos, coeffs)))


@st.composite
def rational_matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    data = draw(st.lists(st.lists(small_fractions, min_size=c, max_size=c), min_size=r, max_size=r))
    # sparsify so the block decomposition gets exercised
    mask = draw(st.lists(st.lists(st.booleans(), min_size=c, max_size=c), min_size=r, max_size=r))
    return [[v if keep else 0 for v, keep in zip(row, mrow)] for row, mrow in zip(data, mask)], c


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
