"""Graded coordinate rings of complete intersections.

Everything is computed degree by degree: the ideal piece ``I_m`` is the
column span of the monomial multiples ``x^alpha * F_j``, and a quotient basis
of ``(S/I)_m`` is chosen greedily among monomials, earliest in graded-lex
order first.  No Groebner bases are involved.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Callable, Mapping, Sequence

from .errors import CertificationError, InvalidInputError, UndefinedZetaError
from .exactalg import RationalMatrix, rank, rref
from .polyring import SparsePolynomial, monomial_basis, monomial_index

__all__ = [
    "CompleteIntersection",
    "CurveInvariants",
    "QuotientPiece",
    "ideal_piece",
    "hilbert_function",
    "hilbert_series_coefficient",
    "normal_form",
    "curve_invariants",
    "h0_line",
    "h1_line",
    "fermat_forms",
    "random_forms",
]


def hilbert_series_coefficient(n: int, degrees: Sequence[int], m: int) -> int:
    """Coefficient of ``t^m`` in ``prod_j (1 - t^{d_j}) / (1 - t)^{n+1}``."""
    if m < 0:
        return 0
    # numerator polynomial, expanded
    num = {0: 1}
    for d in degrees:
        nxt: dict[int, int] = {}
        for k, c in num.items():
            nxt[k] = nxt.get(k, 0) + c
            nxt[k + d] = nxt.get(k + d, 0) - c
        num = nxt
    return sum(c * comb(n + m - k, n) for k, c in num.items() if k <= m)


@dataclass(frozen=True)
class QuotientPiece:
    """Degree-``m`` piece of ``S/I`` in monomial coordinates.

    ``reductions`` maps each non-representative monomial position to the
    quotient coordinates of its class; representatives map to unit vectors.
    """

    degree: int
    basis: tuple
    ideal_gens: RationalMatrix
    ideal_rank: int
    reps: tuple
    rep_positions: tuple
    reductions: Mapping[int, Mapping[int, Fraction]]

    @property
    def dim(self) -> int:
        return len(self.reps)

    def project(self, vector: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Quotient coordinates of a sparse vector in ``basis`` coordinates."""
        out: dict[int, Fraction] = {}
        for pos, c in vector.items():
            for k, w in self.reductions[pos].items():
                out[k] = out.get(k, 0) + c * w
        return {k: v for k, v in out.items() if v}

    def project_poly(self, p: SparsePolynomial) -> dict[int, Fraction]:
        index = monomial_index(len(self.basis[0]) - 1, self.degree) if self.basis else {}
        out: dict[int, Fraction] = {}
        for mono, c in p.items():
            for k, w in self.reductions[index[mono]].items():
                out[k] = out.get(k, 0) + c * w
        return {k: v for k, v in out.items() if v}

    def projection_matrix(self) -> RationalMatrix:
        entries = {}
        for pos, red in self.reductions.items():
            for k, w in red.items():
                entries[(k, pos)] = w
        return RationalMatrix(self.dim, len(self.basis), entries)


class CompleteIntersection:
    """Complete intersection ``X = V(F_1, ..., F_{n-k})`` in ``P^n``.

    With no forms this is ``P^n`` itself.  Quotient pieces and other derived
    data are memoized per instance with compute-once semantics.
    """

    def __init__(self, n: int, forms: Sequence[SparsePolynomial], label: str = ""):
        if n < 1:
            raise InvalidInputError("ambient dimension must be at least 1")
        forms = list(forms)
        if len(forms) > n:
            raise InvalidInputError(f"{len(forms)} forms in P^{n}: not a complete intersection")
        for F in forms:
            if F.nvars != n + 1:
                raise InvalidInputError(f"form {F.to_text()} is not in {n + 1} variables")
            if F.is_zero() or not F.is_homogeneous():
                raise InvalidInputError(f"form {F.to_text()} is not a nonzero homogeneous form")
            if F.degree < 2:
                raise InvalidInputError(f"form {F.to_text()} has degree {F.degree} < 2")
        order = sorted(range(len(forms)), key=lambda j: -forms[j].degree)
        self.n = n
        self.forms = tuple(forms[j] for j in order)
        self.degrees = tuple(F.degree for F in self.forms)
        self.label = label or f"CI(n={n}, d={list(self.degrees)})"
        self._memo: dict = {}
        self._lock = threading.RLock()

    @property
    def dim_x(self) -> int:
        return self.n - len(self.forms)

    @property
    def is_curve(self) -> bool:
        return self.dim_x == 1

    @property
    def nvars(self) -> int:
        return self.n + 1

    def __repr__(self):
        return f"CompleteIntersection({self.label!r}, n={self.n}, degrees={list(self.degrees)})"

    def __getstate__(self):
        return {"n": self.n, "forms": self.forms, "label": self.label}

    def __setstate__(self, state):
        self.__init__(state["n"], state["forms"], state["label"])

    def memo(self, key, factory: Callable):
        with self._lock:
            if key not in self._memo:
                self._memo[key] = factory()
            return self._memo[key]

    def scaled(self, factors: Sequence) -> "CompleteIntersection":
        """Same variety with each defining form multiplied by a nonzero rational."""
        if any(Fraction(c) == 0 for c in factors):
            raise InvalidInputError("scaling factors must be nonzero")
        return CompleteIntersection(
            self.n, [F.scale(c) for F, c in zip(self.forms, factors)], self.label + " (scaled)"
        )

    def quotient_piece(self, m: int) -> QuotientPiece:
        return self.memo(("quotient", m), lambda: _build_quotient_piece(self, m))

    def series_coefficient(self, m: int) -> int:
        return hilbert_series_coefficient(self.n, self.degrees, m)

    def certify(self, max_degree: int) -> None:
        for m in range(max_degree + 1):
            hilbert_function(self, m)


def _ideal_columns(ci: CompleteIntersection, m: int) -> list[dict[int, Fraction]]:
    index = monomial_index(ci.n, m)
    cols = []
    for F in ci.forms:
        for alpha in monomial_basis(ci.n, m - F.degree):
            col = {}
            for mono, c in F.items():
                col[index[tuple(a + b for a, b in zip(alpha, mono))]] = c
            cols.append(col)
    return cols


def ideal_piece(ci: CompleteIntersection, m: int) -> RationalMatrix:
    """Columns: coordinates of ``x^alpha * F_j`` with ``|alpha| = m - d_j``."""
    if m < 0:
        raise InvalidInputError("degree must be nonnegative")
    return RationalMatrix.from_columns(len(monomial_basis(ci.n, m)), _ideal_columns(ci, m))


def _build_quotient_piece(ci: CompleteIntersection, m: int) -> QuotientPiece:
    basis = monomial_basis(ci.n, m)
    N = len(basis)
    gens = ideal_piece(ci, m)
    # Eliminate with the latest monomials first: pivots land on the latest
    # monomials, so the complement is the earliest greedy quotient basis.
    rev = [N - 1 - j for j in range(N)]
    rows, pivots = rref(gens.transpose().permute(list(range(gens.cols)), rev))
    pivot_pos = [N - 1 - p for p in pivots]
    pivset = set(pivot_pos)
    rep_positions = tuple(j for j in range(N) if j not in pivset)
    rep_index = {j: k for k, j in enumerate(rep_positions)}
    reductions: dict[int, dict[int, Fraction]] = {j: {k: Fraction(1)} for j, k in rep_index.items()}
    for row, p in zip(rows, pivot_pos):
        red = {}
        for c, v in row.items():
            j = N - 1 - c
            if j != p:
                red[rep_index[j]] = -v
        reductions[p] = red
    return QuotientPiece(
        degree=m,
        basis=basis,
        ideal_gens=gens,
        ideal_rank=len(pivot_pos),
        reps=tuple(basis[j] for j in rep_positions),
        rep_positions=rep_positions,
        reductions=reductions,
    )


def hilbert_function(ci: CompleteIntersection, m: int) -> int:
    """``dim (S/I)_m`` by elimination, certified against the closed-form series."""
    if m < 0:
        return 0
    computed = ci.quotient_piece(m).dim
    expected = ci.series_coefficient(m)
    if computed != expected:
        raise CertificationError(m, computed, expected)
    return computed


def normal_form(ci: CompleteIntersection, p: SparsePolynomial, degree: int | None = None) -> tuple:
    """Coordinates of the class of ``p`` in the representative basis of ``(S/I)_m``."""
    if p.nvars != ci.nvars:
        raise InvalidInputError("polynomial has the wrong number of variables")
    if not p.is_homogeneous():
        raise InvalidInputError(f"{p.to_text()} is not homogeneous")
    m = p.degree if p else degree
    if m is None:
        raise InvalidInputError("degree of the zero polynomial must be given")
    if degree is not None and degree != m:
        raise InvalidInputError(f"polynomial has degree {m}, expected {degree}")
    if m < 0:
        raise InvalidInputError("negative degree")
    piece = ci.quotient_piece(m)
    coords = piece.project_poly(p)
    return tuple(coords.get(k, Fraction(0)) for k in range(piece.dim))


@dataclass(frozen=True)
class CurveInvariants:
    xi: int
    genus: int
    degree_of_curve: int
    h: int | None = None
    zeta: int | None = None
    r: int | None = None


def curve_invariants(ci: CompleteIntersection, h: int | None = None) -> CurveInvariants:
    """Canonical degree, genus and degree of a complete intersection curve.

    With ``h`` given, also the twist ``zeta = xi / h`` and ``r = h^0(O_C(zeta)) - 1``.
    """
    if not ci.is_curve:
        raise InvalidInputError(f"{ci.label} has dimension {ci.dim_x}, not a curve")
    xi = sum(ci.degrees) - ci.n - 1
    deg = prod(ci.degrees)
    twice = xi * deg + 2
    assert twice % 2 == 0
    g = twice // 2
    if h is None:
        return CurveInvariants(xi, g, deg)
    if h < 1 or xi % h:
        raise UndefinedZetaError(f"h = {h} does not divide xi = {xi}")
    zeta = xi // h
    return CurveInvariants(xi, g, deg, h, zeta, h0_line(ci, zeta) - 1)


def h0_line(ci: CompleteIntersection, m: int) -> int:
    """``h^0(O_X(m))``; complete intersections are projectively normal."""
    if ci.dim_x < 1:
        raise InvalidInputError("h0_line needs a positive-dimensional variety")
    return hilbert_function(ci, m) if m >= 0 else 0


def h1_line(ci: CompleteIntersection, m: int) -> int:
    """``h^1(O_C(m)) = h^0(O_C(xi - m))`` by Serre duality on a curve."""
    inv = curve_invariants(ci)
    return h0_line(ci, inv.xi - m)


# ---------------------------------------------------------------------------
# form families used by presets and curve specs


def fermat_forms(n: int, degrees: Sequence[int]) -> list[SparsePolynomial]:
    """Diagonal forms ``sum_i (i+1)^j X_i^{d_j}`` for ``j = 0, 1, ...``.

    The first is the Fermat form; distinct weights keep the intersection transversal.
    """
    forms = []
    for j, d in enumerate(degrees):
        terms = {}
        for i in range(n + 1):
            e = [0] * (n + 1)
            e[i] = d
            terms[tuple(e)] = (i + 1) ** j
        forms.append(SparsePolynomial(n + 1, terms))
    return forms


def random_forms(n: int, degrees: Sequence[int], seed: int, bound: int = 3) -> list[SparsePolynomial]:
    """Dense forms with integer coefficients drawn uniformly from ``[-bound, bound]``."""
    rng = random.Random(seed)
    forms = []
    for d in degrees:
        terms = {mono: rng.randint(-bound, bound) for mono in monomial_basis(n, d)}
        forms.append(SparsePolynomial(n + 1, terms))
    return forms
