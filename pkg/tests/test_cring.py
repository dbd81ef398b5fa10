from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wgauss.cring import (
    CompleteIntersection,
    curve_invariants,
    h0_line,
    h1_line,
    hilbert_function,
    hilbert_series_coefficient,
    ideal_piece,
    normal_form,
)
from wgauss.errors import CertificationError, InvalidInputError, UndefinedZetaError
from wgauss.exactalg import rank
from wgauss.polyring import SparsePolynomial, monomial_basis, parse_polynomial
from wgauss.specs import PRESETS, preset

from conftest import homogeneous_polys

PRESET_NAMES = sorted(PRESETS)


def test_ideal_piece_examples(sextic, elliptic):
    assert ideal_piece(sextic, 5).cols == 0
    m6 = ideal_piece(sextic, 6)
    assert m6.cols == 1 and rank(m6) == 1
    m3 = ideal_piece(elliptic, 3)
    assert m3.cols == 8 and rank(m3) == 8 == comb(6, 3) - hilbert_function(elliptic, 3)


def test_hilbert_function_examples(sextic, elliptic, canonical):
    assert hilbert_function(sextic, 6) == 27
    assert hilbert_function(elliptic, 1) == 4
    assert hilbert_function(canonical, 3) == 20
    assert hilbert_function(sextic, -1) == 0


def test_hilbert_series_of_projective_space():
    assert [hilbert_series_coefficient(3, [], m) for m in range(4)] == [1, 4, 10, 20]


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_hilbert_function_matches_series(name):
    ci = preset(name)
    inv = curve_invariants(ci)
    for m in range(0, 2 * inv.xi + 2 * ci.degrees[0] + 1):
        assert ci.quotient_piece(m).dim == ci.series_coefficient(m)


def test_non_regular_sequence_fails_certification():
    ci = CompleteIntersection(2, [parse_polynomial("X0^2", 3), parse_polynomial("X0*X1", 3)])
    assert hilbert_function(ci, 2) == 4
    with pytest.raises(CertificationError) as info:
        hilbert_function(ci, 3)
    assert info.value.degree == 3
    assert (info.value.computed, info.value.expected) == (5, 4)


def test_normal_form_examples(sextic):
    F = sextic.forms[0]
    assert all(c == 0 for c in normal_form(sextic, F))
    piece = sextic.quotient_piece(6)
    rep = piece.reps[0]
    v = normal_form(sextic, SparsePolynomial.monomial(rep))
    assert v == tuple(Fraction(int(k == 0)) for k in range(piece.dim))
    # below the generator degree the quotient map is the identity on monomials
    assert sextic.quotient_piece(5).dim == len(monomial_basis(2, 5))


@pytest.mark.parametrize("name", PRESET_NAMES)
@pytest.mark.parametrize("m", [2, 3, 4])
def test_normal_form_kernel_is_the_ideal(name, m):
    ci = preset(name)
    piece = ci.quotient_piece(m)
    # every ideal generator maps to zero, and the representatives stay independent
    for col in piece.ideal_gens.columns():
        assert piece.project(col) == {}
    assert piece.dim + piece.ideal_rank == len(monomial_basis(ci.n, m))


@given(st.data())
def test_normal_form_is_linear_and_kills_multiples(data):
    ci = preset(data.draw(st.sampled_from(["sextic", "elliptic-quartic"])))
    m = data.draw(st.integers(ci.degrees[0], ci.degrees[0] + 2))
    p = data.draw(homogeneous_polys(nvars=ci.nvars, degree=m))
    q = data.draw(homogeneous_polys(nvars=ci.nvars, degree=m))
    g = data.draw(homogeneous_polys(nvars=ci.nvars, degree=m - ci.forms[0].degree))
    c = Fraction(data.draw(st.integers(-5, 5)), 3)
    nf = lambda f: normal_form(ci, f, degree=m)  # noqa: E731
    assert nf(p + q.scale(c)) == tuple(x + c * y for x, y in zip(nf(p), nf(q)))
    assert nf(p + g * ci.forms[0]) == nf(p)


def test_normal_form_rejects_bad_input(sextic):
    with pytest.raises(InvalidInputError):
        normal_form(sextic, parse_polynomial("X0 + X1^2", 3))
    with pytest.raises(InvalidInputError):
        normal_form(sextic, parse_polynomial("X0", 4))


def test_curve_invariant_examples(sextic, elliptic, canonical):
    inv = curve_invariants(sextic, 3)
    assert (inv.xi, inv.genus, inv.degree_of_curve, inv.zeta, inv.r) == (3, 10, 6, 1, 2)
    inv = curve_invariants(elliptic)
    assert (inv.xi, inv.genus, inv.degree_of_curve) == (0, 1, 4)
    inv = curve_invariants(canonical)
    assert (inv.xi, inv.genus, inv.degree_of_curve) == (1, 5, 8)


def test_curve_invariants_preconditions(sextic):
    with pytest.raises(UndefinedZetaError):
        curve_invariants(sextic, 2)
    surface = CompleteIntersection(3, [parse_polynomial("X0^2 + X1^2 + X2^2 + X3^2", 4)])
    with pytest.raises(InvalidInputError):
        curve_invariants(surface)


def test_line_bundle_examples(sextic, elliptic, canonical):
    assert h0_line(sextic, 3) == 10
    assert h1_line(sextic, 3) == h0_line(sextic, 0) == 1
    assert h1_line(elliptic, 0) == 1
    assert h1_line(canonical, 1) == 1


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_riemann_roch(name):
    ci = preset(name)
    inv = curve_invariants(ci)
    for m in range(-2 * inv.xi - 2, 2 * inv.xi + 5):
        assert h0_line(ci, m) - h1_line(ci, m) == m * inv.degree_of_curve - inv.genus + 1


def test_forms_are_validated():
    with pytest.raises(InvalidInputError):
        CompleteIntersection(2, [parse_polynomial("X0 + X1^2", 3)])
    with pytest.raises(InvalidInputError):
        CompleteIntersection(2, [parse_polynomial("X0", 3)])
    with pytest.raises(InvalidInputError):
        CompleteIntersection(1, [parse_polynomial("X0^2", 2), parse_polynomial("X1^2", 2)])


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_scaling_forms_keeps_hilbert_function(name):
    ci = preset(name)
    scaled = ci.scaled([Fraction(-3, 2 + j) for j in range(len(ci.forms))])
    for m in range(0, 7):
        assert hilbert_function(scaled, m) == hilbert_function(ci, m)
