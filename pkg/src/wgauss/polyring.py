"""Sparse multivariate polynomials over Q in the variables X_0, ..., X_n.

A monomial is a plain tuple of exponents.  Monomials of a fixed degree are
ordered lexicographically with X_0 largest (graded lex overall), so that every
matrix built from them has reproducible row and column coordinates.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping

from .errors import InvalidInputError

Monomial = tuple  # tuple[int, ...] of length n + 1

__all__ = [
    "Monomial",
    "SparsePolynomial",
    "monomial_basis",
    "monomial_index",
    "multiply",
    "partial_derivative",
    "format_rational",
    "parse_rational",
    "parse_polynomial",
]


@lru_cache(maxsize=None)
def monomial_basis(n: int, m: int) -> tuple[Monomial, ...]:
    """All degree-``m`` monomials in ``n + 1`` variables, X_0^m first."""
    if n < 0:
        raise InvalidInputError("ambient dimension must be nonnegative")
    if m < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(n + 1), m):
        e = [0] * (n + 1)
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    assert len(out) == comb(n + m, n)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, m: int) -> Mapping[Monomial, int]:
    return {mono: k for k, mono in enumerate(monomial_basis(n, m))}


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class SparsePolynomial:
    """Immutable polynomial ``{monomial: Fraction}`` with no zero coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        store = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(mono)
                if len(mono) != nvars or any(e < 0 for e in mono):
                    raise InvalidInputError(f"bad monomial {mono} for {nvars} variables")
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c:
                    store[mono] = store.get(mono, 0) + c
                    if not store[mono]:
                        del store[mono]
        self.nvars = nvars
        self._terms = store
        self._hash = None

    @classmethod
    def _trusted(cls, nvars, store):
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = store
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "SparsePolynomial":
        return cls._trusted(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c=1) -> "SparsePolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "SparsePolynomial":
        e = [0] * nvars
        e[i] = 1
        return cls._trusted(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Iterable[int], c=1) -> "SparsePolynomial":
        exps = tuple(exps)
        return cls(len(exps), {exps: c})

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def degrees(self) -> set[int]:
        return {sum(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """Degree of a nonzero homogeneous polynomial; None for zero or mixed degree."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def _check(self, other):
        if other.nvars != self.nvars:
            raise InvalidInputError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, SparsePolynomial):
            other = SparsePolynomial.constant(self.nvars, other)
        self._check(other)
        store = dict(self._terms)
        for mono, c in other._terms.items():
            v = store.get(mono, 0) + c
            if v:
                store[mono] = v
            else:
                store.pop(mono, None)
        return SparsePolynomial._trusted(self.nvars, store)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial._trusted(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SparsePolynomial):
            other = SparsePolynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SparsePolynomial":
        c = c if isinstance(c, Fraction) else Fraction(c)
        if not c:
            return SparsePolynomial.zero(self.nvars)
        return SparsePolynomial._trusted(self.nvars, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, SparsePolynomial):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = SparsePolynomial.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def partial(self, i: int) -> "SparsePolynomial":
        return partial_derivative(self, i)

    def __eq__(self, other):
        if isinstance(other, SparsePolynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if not other:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in graded-lex order, highest first."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def to_text(self) -> str:
        """Serialize as ``c * X0^a0*...*Xn^an + ...``."""
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            powers = "*".join(f"X{i}^{e}" for i, e in enumerate(mono))
            parts.append(f"{format_rational(c)} * {powers}")
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str, nvars: int) -> "SparsePolynomial":
        return parse_polynomial(text, nvars)

    def __repr__(self):
        return f"SparsePolynomial({self.to_text()!r})"


def multiply(p: SparsePolynomial, q: SparsePolynomial) -> SparsePolynomial:
    p._check(q)
    store: dict = {}
    for m1, c1 in p._terms.items():
        for m2, c2 in q._terms.items():
            m = _add(m1, m2)
            store[m] = store.get(m, 0) + c1 * c2
    return SparsePolynomial._trusted(p.nvars, {m: c for m, c in store.items() if c})


def partial_derivative(p: SparsePolynomial, i: int) -> SparsePolynomial:
    if not 0 <= i < p.nvars:
        raise InvalidInputError(f"variable index {i} out of range")
    store = {}
    for mono, c in p._terms.items():
        e = mono[i]
        if e:
            m = list(mono)
            m[i] = e - 1
            store[tuple(m)] = c * e
    return SparsePolynomial._trusted(p.nvars, store)


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


_TERM = re.compile(
    r"^(?P<sign>-)?\s*(?P<coef>\d+(?:\s*/\s*\d+)?)?\s*\*?\s*(?P<mono>(?:X\d+(?:\^\d+)?\s*\*?\s*)*)$"
)
_POWER = re.compile(r"X(\d+)(?:\^(\d+))?")


def parse_polynomial(text: str, nvars: int) -> SparsePolynomial:
    """Inverse of :meth:`SparsePolynomial.to_text`; also accepts omitted factors.

    ``"2 * X0^2*X1"``, ``"-1/3 * X2^0"`` and ``"X0^2 - X1^2"`` are valid.
    """
    text = text.strip()
    if not text:
        raise InvalidInputError("empty polynomial text")
    # a '-' following a complete term is a binary minus
    text = re.sub(r"(?<=[\w)])\s*-\s*", "+-", text)
    chunks = [c.strip() for c in text.split("+")]
    if chunks and chunks[0] == "" and len(chunks) > 1:
        chunks = chunks[1:]
    terms: dict = {}
    for chunk in chunks:
        m = _TERM.match(chunk)
        if not chunk or m is None or (m.group("coef") is None and not m.group("mono")):
            raise InvalidInputError(f"cannot parse term {chunk!r} in {text!r}")
        coef = Fraction(m.group("coef").replace(" ", "")) if m.group("coef") else Fraction(1)
        if m.group("sign"):
            coef = -coef
        exps = [0] * nvars
        for var, power in _POWER.findall(m.group("mono") or ""):
            v = int(var)
            if v >= nvars:
                raise InvalidInputError(f"variable X{v} out of range for {nvars} variables")
            exps[v] += int(power) if power else 1
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coef
    return SparsePolynomial(nvars, terms)
