"""Curve-spec documents and the shipped preset instances.

A curve spec is a JSON object::

    {"n": 2, "degrees": [6], "forms": "fermat", "label": "plane sextic"}
    {"n": 4, "degrees": [2, 2, 2], "forms": "random", "seed": 42}
    {"n": 2, "degrees": [4], "forms": [[[1, 1, [4, 0, 0]], [1, 1, [0, 4, 0]], [-1, 1, [0, 0, 4]]]]}

Explicit forms are lists of ``[numerator, denominator, exponents]`` term
triples, or polynomial strings such as ``"X0^4 + X1^4 - X2^4"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .cring import CompleteIntersection, fermat_forms, random_forms
from .errors import InvalidInputError, SpecParseError
from .polyring import SparsePolynomial, parse_polynomial

__all__ = ["CurveSpec", "parse_curve_spec", "load_curve_spec", "PRESETS", "preset"]


@dataclass(frozen=True)
class CurveSpec:
    n: int
    degrees: tuple
    forms: Any = "fermat"  # "fermat", "random" or a tuple of explicit forms
    seed: int = 42
    label: str = ""

    def build(self) -> CompleteIntersection:
        if self.forms == "fermat":
            polys = fermat_forms(self.n, self.degrees)
        elif self.forms == "random":
            polys = random_forms(self.n, self.degrees, self.seed)
        else:
            polys = list(self.forms)
            got = sorted((F.degree for F in polys), reverse=True)
            if got != sorted(self.degrees, reverse=True):
                raise SpecParseError(f"forms have degrees {got}, spec declares {list(self.degrees)}")
        label = self.label or f"n={self.n} d={list(self.degrees)} {self.forms if isinstance(self.forms, str) else 'explicit'}"
        return CompleteIntersection(self.n, polys, label=label)

    def to_dict(self) -> dict:
        d: dict = {"n": self.n, "degrees": list(self.degrees), "label": self.label}
        if isinstance(self.forms, str):
            d["forms"] = self.forms
            if self.forms == "random":
                d["seed"] = self.seed
        else:
            d["forms"] = [F.to_text() for F in self.forms]
        return d


def _parse_form(raw, nvars: int, where: str) -> SparsePolynomial:
    if isinstance(raw, str):
        try:
            return parse_polynomial(raw, nvars)
        except InvalidInputError as exc:
            raise SpecParseError(f"{where}: {exc}") from None
    if not isinstance(raw, list):
        raise SpecParseError(f"{where}: expected a string or a list of term triples")
    terms: dict = {}
    for k, term in enumerate(raw):
        loc = f"{where}.terms[{k}]"
        if not (isinstance(term, list) and len(term) == 3):
            raise SpecParseError(f"{loc}: expected [numerator, denominator, exponents]")
        num, den, exps = term
        if not isinstance(num, int) or not isinstance(den, int) or den <= 0:
            raise SpecParseError(f"{loc}: numerator must be an integer and denominator a positive integer")
        if not (isinstance(exps, list) and len(exps) == nvars and all(isinstance(x, int) and x >= 0 for x in exps)):
            raise SpecParseError(f"{loc}: exponents must be {nvars} nonnegative integers")
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + Fraction(num, den)
    return SparsePolynomial(nvars, terms)


def parse_curve_spec(doc: dict) -> CurveSpec:
    """Validate a decoded JSON document; errors name the offending field."""
    if not isinstance(doc, dict):
        raise SpecParseError("spec: top level must be an object")
    n = doc.get("n")
    if not isinstance(n, int) or n < 1:
        raise SpecParseError("spec.n: must be an integer >= 1")
    degrees = doc.get("degrees")
    if not (isinstance(degrees, list) and degrees and all(isinstance(d, int) for d in degrees)):
        raise SpecParseError("spec.degrees: must be a nonempty list of integers")
    if any(d < 2 for d in degrees):
        raise SpecParseError("spec.degrees: every degree must be >= 2")
    if len(degrees) > n:
        raise SpecParseError(f"spec.degrees: {len(degrees)} forms exceed ambient dimension {n}")
    seed = doc.get("seed", 42)
    if not isinstance(seed, int):
        raise SpecParseError("spec.seed: must be an integer")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise SpecParseError("spec.label: must be a string")
    forms = doc.get("forms", "fermat")
    if isinstance(forms, str):
        if forms not in ("fermat", "random"):
            raise SpecParseError(f"spec.forms: unknown family {forms!r} (use 'fermat', 'random' or a list)")
        parsed: Any = forms
    elif isinstance(forms, list):
        if len(forms) != len(degrees):
            raise SpecParseError(f"spec.forms: {len(forms)} forms given, {len(degrees)} degrees declared")
        parsed = tuple(_parse_form(f, n + 1, f"spec.forms[{j}]") for j, f in enumerate(forms))
        for j, (F, d) in enumerate(zip(parsed, degrees)):
            if F.is_zero() or not F.is_homogeneous() or F.degree != d:
                raise SpecParseError(f"spec.forms[{j}]: not a homogeneous form of degree {d}")
    else:
        raise SpecParseError("spec.forms: must be 'fermat', 'random' or a list of forms")
    return CurveSpec(n=n, degrees=tuple(degrees), forms=parsed, seed=seed, label=label)


def load_curve_spec(path: str | Path) -> CurveSpec:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise SpecParseError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return parse_curve_spec(doc)
    except SpecParseError as exc:
        raise SpecParseError(f"{path}: {exc}") from None


PRESETS: dict[str, CurveSpec] = {
    "quintic": CurveSpec(2, (5,), "fermat", label="fermat plane quintic"),
    "sextic": CurveSpec(2, (6,), "fermat", label="fermat plane sextic"),
    "elliptic-quartic": CurveSpec(3, (2, 2), "fermat", label="elliptic quartic in P^3"),
    "canonical-genus5": CurveSpec(4, (2, 2, 2), "random", seed=42, label="canonical genus-5 curve in P^4"),
}

_BUILT: dict[str, CompleteIntersection] = {}


def preset(name: str) -> CompleteIntersection:
    """Shared instance of a shipped preset (memoized data is reused across calls)."""
    if name not in PRESETS:
        raise InvalidInputError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    if name not in _BUILT:
        _BUILT[name] = PRESETS[name].build()
    return _BUILT[name]
