"""Twisted cotangent sections in Euler coordinates.

A section of ``Omega^1_{P^n}(t)`` is a tuple ``(f_0, ..., f_n)`` of forms of
degree ``t - 1`` with ``sum_i X_i f_i = 0``.  On a complete intersection the
same tuples are taken in ``(S/I)_{t-1}`` and the relation holds in
``(S/I)_t``.  The ambient coordinate of ``(i, u)`` (variable ``i``, basis
element ``u`` of the degree ``t - 1`` piece) is ``i * dim + position(u)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, NamedTuple, Sequence

from .cring import CompleteIntersection, curve_invariants, h0_line, hilbert_function
from .errors import InvalidInputError, UnsupportedTwistError
from .exactalg import RationalMatrix, kernel_basis, rank
from .polyring import SparsePolynomial

__all__ = [
    "OmegaSections",
    "VanishingVerdict",
    "projective_space",
    "euler_vector",
    "euler_contract",
    "multiplication_matrix",
    "omega_pn_sections",
    "omega_restricted_sections",
    "conormal_image",
    "conormal_rank",
    "h1_conormal_vanishes",
    "omega_x_sections",
]


@lru_cache(maxsize=None)
def projective_space(n: int) -> CompleteIntersection:
    return CompleteIntersection(n, [], label=f"P^{n}")


@dataclass(frozen=True)
class OmegaSections:
    """Sections of a twisted cotangent sheaf presented inside ``V (x) R_{t-1}``.

    ``dim_h0`` is the true dimension of the space of sections.  For
    ``Omega^1_X(t)`` on a curve, ``quotient_dim`` is the dimension of the
    Euler-model presentation ``kernel / conormal``; it equals ``dim_h0`` when
    ``h^1(N*_X(t)) = 0`` and is otherwise only a lower bound, which
    ``lower_bound_only`` records.
    """

    t: int
    n: int
    sheaf: str
    ambient_dim: int
    kernel_basis: RationalMatrix
    dim_h0: int
    conormal_gens: RationalMatrix | None = None
    quotient_dim: int | None = None
    lower_bound_only: bool = False


def euler_vector(ci: CompleteIntersection, polys: Sequence[SparsePolynomial], t: int) -> dict[int, Fraction]:
    """Ambient coordinates of ``(f_0, ..., f_n)`` with each ``f_i`` of degree ``t - 1``."""
    piece = ci.quotient_piece(t - 1)
    dim = piece.dim
    out: dict[int, Fraction] = {}
    for i, f in enumerate(polys):
        if f.is_zero():
            continue
        if f.degree != t - 1:
            raise InvalidInputError(f"Euler coordinate {i} has degree {f.degree}, expected {t - 1}")
        for k, v in piece.project_poly(f).items():
            out[i * dim + k] = v
    return out


def euler_contract(ci: CompleteIntersection, vector: Mapping[int, Fraction], t: int) -> dict[int, Fraction]:
    """Coordinates in ``(S/I)_t`` of ``sum_i X_i f_i`` for an ambient vector."""
    return _mult_matrix(ci, t).matvec(vector)


def _mult_matrix(ci: CompleteIntersection, t: int) -> RationalMatrix:
    def build():
        src = ci.quotient_piece(t - 1)
        dst = ci.quotient_piece(t)
        cols = []
        for i in range(ci.nvars):
            for u in src.reps:
                x = list(u)
                x[i] += 1
                cols.append(dst.project_poly(SparsePolynomial.monomial(x)))
        return RationalMatrix.from_columns(dst.dim, cols)

    return ci.memo(("mult", t), build)


def multiplication_matrix(ci: CompleteIntersection, t: int) -> RationalMatrix:
    """Matrix of ``V (x) R_{t-1} -> R_t`` in representative coordinates."""
    if t < 1:
        raise UnsupportedTwistError(f"twist {t} < 1")
    return _mult_matrix(ci, t)


def omega_restricted_sections(ci: CompleteIntersection, t: int) -> OmegaSections:
    """``H^0(Omega^1_{P^n}|_X(t)) = ker(V (x) R_{t-1} -> R_t)``."""
    if t < 1:
        raise UnsupportedTwistError(f"sections of Omega^1(t) need t >= 1, got {t}")

    def build():
        mult = _mult_matrix(ci, t)
        ker = kernel_basis(mult)
        return OmegaSections(
            t=t,
            n=ci.n,
            sheaf="Omega_Pn" if not ci.forms else "Omega_Pn|X",
            ambient_dim=mult.cols,
            kernel_basis=ker,
            dim_h0=ker.cols,
        )

    return ci.memo(("omega_restricted", t), build)


def omega_pn_sections(n: int, t: int) -> OmegaSections:
    """``H^0(P^n, Omega^1(t))`` as the kernel of ``V (x) S_{t-1} -> S_t``."""
    if n < 1:
        raise InvalidInputError("n must be at least 1")
    return omega_restricted_sections(projective_space(n), t)


def conormal_image(ci: CompleteIntersection, t: int) -> RationalMatrix:
    """Images of ``g_j dF_j`` for ``g_j`` running over a basis of ``R_{t-d_j}``."""
    if t < 1:
        raise UnsupportedTwistError(f"twist {t} < 1")

    def build():
        piece = ci.quotient_piece(t - 1)
        cols = []
        for F in ci.forms:
            grads = [F.partial(i) for i in range(ci.nvars)]
            if t - F.degree < 0:
                continue
            for g in ci.quotient_piece(t - F.degree).reps:
                gp = SparsePolynomial.monomial(g)
                cols.append(euler_vector(ci, [gp * d for d in grads], t))
        return RationalMatrix.from_columns(ci.nvars * piece.dim, cols)

    return ci.memo(("conormal", t), build)


def conormal_rank(ci: CompleteIntersection, t: int) -> int:
    return ci.memo(("conormal_rank", t), lambda: rank(conormal_image(ci, t)))


class VanishingVerdict(NamedTuple):
    vanishes: bool
    reason: str
    duality_h1: int | None = None


def h1_conormal_vanishes(ci: CompleteIntersection, t: int) -> VanishingVerdict:
    """Whether ``h^1(N*_X(t)) = 0``, by the complete-intersection criterion.

    On curves the answer is cross-checked by Serre duality:
    ``h^1(N*_C(t)) = sum_j h^0(O_C(xi - t + d_j))``.
    """
    if not ci.forms:
        return VanishingVerdict(True, "no conormal bundle (X = P^n)")
    k = ci.dim_x
    if k >= 2:
        return VanishingVerdict(True, f"dim X = {k} >= 2: H^1(O_X(c)) = 0 for all c")
    if k == 0:
        raise InvalidInputError("zero-dimensional complete intersections are not supported")
    bound = 2 * ci.degrees[0] + sum(ci.degrees[1:]) - ci.n - 1
    vanishes = t > bound
    xi = curve_invariants(ci).xi
    dual = sum(h0_line(ci, xi - t + d) for d in ci.degrees)
    reason = f"curve: t = {t} {'>' if vanishes else '<='} 2d_1 + d_2 + ... - n - 1 = {bound}"
    return VanishingVerdict(vanishes, reason, dual)


def omega_x_sections(ci: CompleteIntersection, t: int) -> OmegaSections:
    """``H^0(Omega^1_C(t))`` on a complete intersection curve.

    The presentation is ``ker(V (x) R_{t-1} -> R_t) / conormal image``.  The
    true dimension comes from adjunction, ``Omega^1_C(t) = O_C(xi + t)``.
    """
    if not ci.is_curve:
        raise InvalidInputError(f"{ci.label} is not a curve")
    if t < 1:
        raise UnsupportedTwistError(f"twist {t} < 1")

    def build():
        restricted = omega_restricted_sections(ci, t)
        conormal = conormal_image(ci, t)
        qdim = restricted.dim_h0 - conormal_rank(ci, t)
        xi = curve_invariants(ci).xi
        true_dim = hilbert_function(ci, xi + t)
        verdict = h1_conormal_vanishes(ci, t)
        if verdict.vanishes and qdim != true_dim:
            raise ArithmeticError(
                f"Euler presentation has dimension {qdim} but h^0(O_C({xi + t})) = {true_dim}"
            )
        return OmegaSections(
            t=t,
            n=ci.n,
            sheaf="Omega_X",
            ambient_dim=restricted.ambient_dim,
            kernel_basis=restricted.kernel_basis,
            dim_h0=true_dim,
            conormal_gens=conormal,
            quotient_dim=qdim,
            lower_bound_only=not verdict.vanishes,
        )

    return ci.memo(("omega_x", t), build)
