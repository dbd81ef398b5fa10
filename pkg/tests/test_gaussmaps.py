import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wgauss.cohom import conormal_image, euler_contract, projective_space
from wgauss.cring import curve_invariants, hilbert_function
from wgauss.errors import InvalidInputError, UndefinedZetaError
from wgauss.exactalg import multimodular_rank, rank
from wgauss.gaussmaps import (
    GaussMapReport,
    eta_rank,
    euler_coordinates,
    gauss_ci,
    gauss_column,
    gauss_matrix,
    gauss_pn,
    mu_h,
    rank_bounds,
)
from wgauss.polyring import SparsePolynomial, monomial_basis
from wgauss.specs import PRESETS, preset

PRESET_NAMES = sorted(PRESETS)


def test_pn_examples():
    r = gauss_pn(1, 1, 1, 1)
    assert (r.rank, r.codomain_dim, r.surjective) == (1, 1, True)
    r = gauss_pn(2, 1, 1, 2)
    assert (r.rank, r.codomain_dim, r.domain_dim) == (8, 8, 18)
    assert r.matrix_cols == 18


@pytest.mark.parametrize("a, b, e", [(1, 1, 1), (1, 2, 1), (2, 3, 2)])
def test_monomial_tensor_coordinates(a, b, e):
    x0 = SparsePolynomial.variable(3, 0)
    x1 = SparsePolynomial.variable(3, 1)
    sigma, tau = x0 ** (a * e), x1 ** (b * e)
    coords = euler_coordinates(sigma, tau, a, b)
    abe = a * b * e
    assert coords[0] == (x0 ** (a * e - 1) * tau).scale(abe)
    assert coords[1] == (sigma * x1 ** (b * e - 1)).scale(-abe)
    assert coords[2].is_zero()


def test_curve_examples(sextic, elliptic, canonical):
    r = gauss_ci(elliptic, 1, 1, 2)
    assert (r.rank, r.domain_dim, r.surjective) == (12, 32, True)
    r = gauss_ci(sextic, 1, 1, 2)
    assert (r.rank, r.kernel_dim, r.coker_dim) == (8, 10, 19)
    r = gauss_ci(canonical, 1, 1, 3)
    assert (r.rank, r.surjective) == (36, True)


def test_mu_h_examples(sextic, quintic):
    r = mu_h(sextic, 3)
    assert (r.tangent_dim, r.rank, r.eq8_rank_upper) == (19, 8, "8")
    r = mu_h(quintic, 2)
    assert (r.tangent_dim, r.zeta, r.genus, r.r) == (12, 1, 6, 2)


def test_mu_h_preconditions(sextic, elliptic):
    with pytest.raises(InvalidInputError):
        mu_h(sextic, 1)
    with pytest.raises(UndefinedZetaError):
        mu_h(sextic, 2)
    with pytest.raises(InvalidInputError):
        gauss_ci(sextic, 0, 1, 1)
    with pytest.raises(InvalidInputError):
        gauss_ci(projective_space(2), 1, 1, 1)


def test_eta_examples(sextic, elliptic):
    assert eta_rank(sextic, 1, 3) == 10
    assert eta_rank(elliptic, 1, 2) == 8
    for ci in (sextic, elliptic):
        assert eta_rank(ci, 2, 1) == hilbert_function(ci, 2)


def test_rank_bound_examples():
    rec = rank_bounds(10, 3, 0, 1, 4)
    assert (rec.h0_K_minus_L, rec.theorem34_rank, rec.identity_holds) == (4, 3, True)
    assert rec.squeeze_lower <= 3 <= rec.squeeze_upper
    rec = rank_bounds(2, 2, 0, 1, 1)
    assert (rec.theorem34_rank, rec.squeeze_upper, rec.identity_holds) == (0, 0, True)
    rec = rank_bounds(4, 3, 0, 1, 2)
    assert (rec.h0_K_minus_L, rec.theorem34_rank) == (2, 1)
    rec = rank_bounds(10, 3, 2, 3, 6, eta=10)
    assert rec.eq8_upper == 8
    with pytest.raises(InvalidInputError):
        rank_bounds(10, 4, 0, 1, 1)


CELLS = [
    ("elliptic-quartic", 1, 1, 2),
    ("elliptic-quartic", 1, 2, 2),
    ("sextic", 1, 1, 2),
    ("quintic", 1, 2, 1),
    ("canonical-genus5", 1, 1, 2),
]


@pytest.mark.parametrize("name, e, a, b", CELLS)
def test_columns_satisfy_euler_relation(name, e, a, b):
    ci = preset(name)
    t = (a + b) * e
    for col in gauss_matrix(ci, e, a, b).columns():
        assert euler_contract(ci, col, t) == {}


@pytest.mark.parametrize("n, e, a, b", [(1, 2, 2, 3), (2, 1, 1, 2), (3, 1, 2, 2)])
def test_pn_columns_satisfy_euler_relation(n, e, a, b):
    P = projective_space(n)
    for col in gauss_matrix(P, e, a, b).columns():
        assert euler_contract(P, col, (a + b) * e) == {}


LIFT_CELLS = [
    ("elliptic-quartic", 1, 2, 1),
    ("canonical-genus5", 1, 2, 2),
    ("sextic", 3, 2, 1),
    ("quintic", 5, 1, 1),
]


@pytest.mark.parametrize("name, e, a, b", LIFT_CELLS)
def test_lift_independence(name, e, a, b):
    """Adding ideal elements to sigma moves its column by conormal images only."""
    ci = preset(name)
    t = (a + b) * e
    rng = random.Random(7)
    N = conormal_image(ci, t)
    base = rank(N)
    left = ci.quotient_piece(a * e).reps
    right = ci.quotient_piece(b * e).reps
    for _ in range(10):
        sigma = SparsePolynomial.monomial(rng.choice(left))
        tau = SparsePolynomial.monomial(rng.choice(right))
        F = rng.choice(ci.forms)
        g = SparsePolynomial(
            ci.nvars,
            {u: rng.randint(-4, 4) for u in rng.sample(monomial_basis(ci.n, a * e - F.degree), 1)},
        )
        lifted = sigma + g * F
        col = gauss_column(ci, sigma, tau, a, b, t)
        moved = gauss_column(ci, lifted, tau, a, b, t)
        diff = {k: moved.get(k, 0) - col.get(k, 0) for k in set(col) | set(moved)}
        diff = {k: v for k, v in diff.items() if v}
        assert rank(N.hstack(type(N).from_columns(N.rows, [diff]))) == base


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_diagonal_antisymmetry(name):
    ci = preset(name)
    a = b = 1
    reps = ci.quotient_piece(1).reps
    m = gauss_matrix(ci, 1, a, b)
    k = len(reps)
    for i in range(k):
        assert m.column(i * k + i) == {}
        for j in range(k):
            c1, c2 = m.column(i * k + j), m.column(j * k + i)
            assert c1 == {key: -v for key, v in c2.items()}


@pytest.mark.parametrize("name, e, a, b", CELLS)
def test_form_scaling_invariance(name, e, a, b):
    ci = preset(name)
    scaled = ci.scaled([Fraction(5, 3), Fraction(-2)][: len(ci.forms)] + [Fraction(7)] * max(0, len(ci.forms) - 2))
    r1, r2 = gauss_ci(ci, e, a, b), gauss_ci(scaled, e, a, b)
    for key in ("domain_dim", "codomain_dim", "rank", "kernel_dim", "coker_dim", "kernel_lower_bound_eta"):
        assert getattr(r1, key) == getattr(r2, key)


@pytest.mark.parametrize("name, e, a, b", CELLS)
def test_multimodular_rank_agrees(name, e, a, b):
    ci = preset(name)
    t = (a + b) * e
    m = gauss_matrix(ci, e, a, b).hstack(conormal_image(ci, t))
    assert multimodular_rank(m) == rank(m)


@pytest.mark.parametrize("name, e, a, b", CELLS)
def test_report_invariants(name, e, a, b):
    r = gauss_ci(preset(name), e, a, b)
    assert r.rank + r.kernel_dim == r.domain_dim
    assert r.rank + r.coker_dim == r.codomain_dim
    assert r.kernel_dim >= r.kernel_lower_bound_eta
    assert r.bound_holds()


@given(st.integers(1, 3), st.integers(1, 2), st.integers(1, 3), st.integers(1, 3))
def test_pn_reports_round_trip_and_bound(n, e, a, b):
    if (a + b) * e > 6:
        return
    r = gauss_pn(n, e, a, b)
    assert r.surjective
    assert r.bound_holds()
    assert GaussMapReport.from_json(r.to_json()) == r


def test_curve_report_round_trip_with_matrix(sextic):
    r = mu_h(sextic, 3, dump_matrix=True)
    back = GaussMapReport.from_json(r.to_json())
    assert back == r
    assert back.to_json() == r.to_json()
    assert len(r.matrix) == gauss_matrix(sextic, 1, 1, 2).nnz()


def test_gauss_matrix_is_memoized(sextic):
    assert gauss_matrix(sextic, 1, 1, 2) is gauss_matrix(sextic, 1, 1, 2)
    assert curve_invariants(sextic).genus == 10
