"""Weighted Gaussian maps as explicit matrices.

``gamma_{a,b}`` sends ``sigma (x) tau`` to ``b tau d(sigma) - a sigma d(tau)``.
In Euler coordinates the image is the tuple
``(b tau d_i(sigma) - a sigma d_i(tau))_i``, which satisfies
``sum_i X_i (.)_i = (b * deg(sigma) - a * deg(tau)) sigma tau = 0`` because
``deg(sigma) = a e`` and ``deg(tau) = b e``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, prod

from .cohom import (
    conormal_image,
    conormal_rank,
    euler_vector,
    h1_conormal_vanishes,
    omega_pn_sections,
    omega_restricted_sections,
    omega_x_sections,
    projective_space,
)
from .cring import CompleteIntersection, curve_invariants, h0_line
from .errors import InvalidInputError
from .exactalg import RationalMatrix, rank
from .polyring import SparsePolynomial, format_rational

__all__ = [
    "GaussMapReport",
    "BoundRecord",
    "euler_coordinates",
    "gauss_column",
    "gauss_matrix",
    "gauss_pn",
    "gauss_ci",
    "mu_h",
    "eta_rank",
    "eq7_bound",
    "rank_bounds",
]


@dataclass
class GaussMapReport:
    context: str  # "P^n" or "curve"
    instance: str
    n: int
    e: int
    a: int
    b: int
    t: int
    domain_dim: int
    codomain_dim: int
    rank: int
    kernel_dim: int
    coker_dim: int
    surjective: bool
    bound_lower_bf06: int
    bound_strict: bool
    kernel_lower_bound_eta: int
    matrix_rows: int
    matrix_cols: int
    obstructed: bool = False
    euler_quotient_dim: int | None = None
    h: int | None = None
    zeta: int | None = None
    genus: int | None = None
    r: int | None = None
    tangent_dim: int | None = None
    eq8_rank_upper: str | None = None
    matrix: list | None = field(default=None, repr=False)

    def __post_init__(self):
        assert self.rank + self.kernel_dim == self.domain_dim
        assert self.rank + self.coker_dim == self.codomain_dim

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["matrix"] is None:
            del d["matrix"]
        return d

    def to_json(self, **kw) -> str:
        kw.setdefault("sort_keys", True)
        kw.setdefault("indent", 2)
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "GaussMapReport":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})

    @classmethod
    def from_json(cls, text: str) -> "GaussMapReport":
        return cls.from_dict(json.loads(text))

    def bound_holds(self) -> bool:
        """Rank bound ``rank >= h^0(L^a) + h^0(L^b) - 3``, strict when flagged."""
        if self.bound_strict:
            return self.rank > self.bound_lower_bf06
        return self.rank >= self.bound_lower_bf06


@dataclass(frozen=True)
class BoundRecord:
    eq7_lower: int
    eq7_strict: bool
    eq8_upper: Fraction | None
    h0_K_minus_L: int
    squeeze_lower: int
    squeeze_upper: int
    theorem34_rank: Fraction
    identity_holds: bool


def euler_coordinates(sigma: SparsePolynomial, tau: SparsePolynomial, a: int, b: int) -> list[SparsePolynomial]:
    """``(b tau d_i(sigma) - a sigma d_i(tau))_i``."""
    return [
        tau * sigma.partial(i) * b - sigma * tau.partial(i) * a for i in range(sigma.nvars)
    ]


def gauss_column(ci: CompleteIntersection, sigma: SparsePolynomial, tau: SparsePolynomial, a: int, b: int, t: int):
    """Ambient Euler-coordinate vector of ``gamma_{a,b}(sigma (x) tau)``."""
    return euler_vector(ci, euler_coordinates(sigma, tau, a, b), t)


def _check_weights(e, a, b):
    if e < 1 or a < 1 or b < 1:
        raise InvalidInputError(f"need e, a, b >= 1, got e={e}, a={a}, b={b}")


def gauss_matrix(ci: CompleteIntersection, e: int, a: int, b: int) -> RationalMatrix:
    """Columns indexed by (sigma, tau) over representative bases, sigma-major."""
    _check_weights(e, a, b)
    t = (a + b) * e

    def build():
        left = [SparsePolynomial.monomial(u) for u in ci.quotient_piece(a * e).reps]
        right = [SparsePolynomial.monomial(v) for v in ci.quotient_piece(b * e).reps]
        rows = ci.nvars * ci.quotient_piece(t - 1).dim
        cols = (gauss_column(ci, s, r, a, b, t) for s in left for r in right)
        return RationalMatrix.from_columns(rows, cols)

    return ci.memo(("gauss", e, a, b), build)


def eq7_bound(h0_La: int, h0_Lb: int, a: int, b: int) -> tuple[int, bool]:
    """Lower rank bound ``h^0(L^a) + h^0(L^b) - 3`` and whether it is strict."""
    s, t = h0_La - 1, h0_Lb - 1
    return h0_La + h0_Lb - 3, b * s - a * t != 0


def eta_rank(ci: CompleteIntersection, e: int, s: int) -> int:
    """Rank of ``Sym^s R_e -> R_{se}``, the span of all s-fold products."""
    if e < 1 or s < 1:
        raise InvalidInputError("need e, s >= 1")

    def build():
        reps = ci.quotient_piece(e).reps
        target = ci.quotient_piece(s * e)
        cols = []
        for combo in combinations_with_replacement(reps, s):
            mono = tuple(map(sum, zip(*combo)))
            cols.append(target.project_poly(SparsePolynomial.monomial(mono)))
        return rank(RationalMatrix.from_columns(target.dim, cols))

    return ci.memo(("eta", e, s), build)


def _matrix_dump(m: RationalMatrix) -> list:
    return [[i, j, format_rational(v)] for (i, j), v in sorted(m.entries.items())]


def gauss_pn(n: int, e: int, a: int, b: int, dump_matrix: bool = False) -> GaussMapReport:
    """``gamma_{a,b}(P^n, O(e))`` onto ``H^0(Omega^1(ae + be))``."""
    if n < 1:
        raise InvalidInputError("n must be at least 1")
    _check_weights(e, a, b)
    P = projective_space(n)
    t = (a + b) * e
    m = gauss_matrix(P, e, a, b)
    codomain = omega_pn_sections(n, t).dim_h0
    rk = rank(m)
    h0a, h0b = comb(n + a * e, n), comb(n + b * e, n)
    bound, strict = eq7_bound(h0a, h0b, a, b)
    return GaussMapReport(
        context="P^n",
        instance=P.label,
        n=n,
        e=e,
        a=a,
        b=b,
        t=t,
        domain_dim=m.cols,
        codomain_dim=codomain,
        rank=rk,
        kernel_dim=m.cols - rk,
        coker_dim=codomain - rk,
        surjective=rk == codomain,
        bound_lower_bf06=bound,
        bound_strict=strict,
        kernel_lower_bound_eta=eta_rank(P, e, a + b),
        matrix_rows=m.rows,
        matrix_cols=m.cols,
        matrix=_matrix_dump(m) if dump_matrix else None,
    )


def gauss_ci(ci: CompleteIntersection, e: int, a: int, b: int, dump_matrix: bool = False) -> GaussMapReport:
    """``gamma_{a,b}(C, O_C(e))`` on a complete intersection curve.

    The image is measured inside ``kernel / conormal``, which injects into
    ``H^0(Omega^1_C(t))``; the codomain dimension is ``h^0(O_C(xi + t))``.
    """
    if not ci.is_curve:
        raise InvalidInputError(f"{ci.label} is not a curve")
    _check_weights(e, a, b)
    t = (a + b) * e
    m = gauss_matrix(ci, e, a, b)
    conormal = conormal_image(ci, t)
    rk = rank(m.hstack(conormal)) - conormal_rank(ci, t)
    target = omega_x_sections(ci, t)
    codomain = target.dim_h0
    bound, strict = eq7_bound(h0_line(ci, a * e), h0_line(ci, b * e), a, b)
    return GaussMapReport(
        context="curve",
        instance=ci.label,
        n=ci.n,
        e=e,
        a=a,
        b=b,
        t=t,
        domain_dim=m.cols,
        codomain_dim=codomain,
        rank=rk,
        kernel_dim=m.cols - rk,
        coker_dim=codomain - rk,
        surjective=rk == codomain,
        bound_lower_bf06=bound,
        bound_strict=strict,
        kernel_lower_bound_eta=eta_rank(ci, e, a + b),
        matrix_rows=m.rows,
        matrix_cols=m.cols,
        obstructed=not h1_conormal_vanishes(ci, t).vanishes,
        euler_quotient_dim=target.quotient_dim,
        matrix=_matrix_dump(m) if dump_matrix else None,
    )


def rank_bounds(g: int, h: int, r: int, h0_La: int, h0_Lb: int, eta: int | None = None) -> BoundRecord:
    """Rank bounds for ``mu_h = gamma_{1,h-1}(C, L)`` with ``L^h = K_C``.

    ``eq7_*`` is the general lower bound for the given section counts;
    ``eq8_upper`` the upper bound ``(r+1)(r+1+(g-1)(h-2)/h) - rank(eta_h)``
    (when ``eta`` is supplied).  The squeeze fields evaluate both bounds for
    ``h^0(L) = 1``, where Riemann-Roch gives ``h^0(K-L) = g - (2g-2)/h``.
    """
    if h < 2 or g < 2:
        raise InvalidInputError(f"need g, h >= 2, got g={g}, h={h}")
    if (2 * g - 2) % h:
        raise InvalidInputError(f"h = {h} does not divide 2g - 2 = {2 * g - 2}")
    eq7, strict = eq7_bound(h0_La, h0_Lb, 1, h - 1)
    codim = Fraction((g - 1) * (h - 2), h)
    eq8 = None if eta is None else (r + 1) * (r + 1 + codim) - eta
    h0KL = g - (2 * g - 2) // h
    lower, lower_strict = eq7_bound(1, h0KL, 1, h - 1)
    squeeze_lower = max(0, lower + 1 if lower_strict else lower)
    squeeze_upper = 1 * h0KL - 1
    holds = (
        codim.denominator == 1
        and squeeze_lower == squeeze_upper
        and squeeze_upper == codim
        and h0KL - 1 == codim
    )
    return BoundRecord(eq7, strict, eq8, h0KL, squeeze_lower, squeeze_upper, codim, holds)


def mu_h(ci: CompleteIntersection, h: int, dump_matrix: bool = False) -> GaussMapReport:
    """``mu_h = gamma_{1,h-1}(C, O_C(zeta))`` with ``zeta = xi / h``.

    The cokernel dimension is reported as ``tangent_dim``.
    """
    if h < 2:
        raise InvalidInputError(f"h must be at least 2, got {h}")
    inv = curve_invariants(ci, h)
    if inv.zeta < 1:
        raise InvalidInputError(f"zeta = {inv.zeta}: O_C(zeta) has no room for mu_h")
    if inv.genus < 2:
        raise InvalidInputError(f"genus {inv.genus} < 2")
    report = gauss_ci(ci, inv.zeta, 1, h - 1, dump_matrix=dump_matrix)
    eta = eta_rank(ci, inv.zeta, h)
    bounds = rank_bounds(
        inv.genus, h, inv.r, h0_line(ci, inv.zeta), h0_line(ci, (h - 1) * inv.zeta), eta=eta
    )
    report.h = h
    report.zeta = inv.zeta
    report.genus = inv.genus
    report.r = inv.r
    report.tangent_dim = report.coker_dim
    report.eq8_rank_upper = format_rational(bounds.eq8_upper)
    return report
