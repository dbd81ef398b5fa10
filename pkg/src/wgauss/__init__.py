"""Weighted Gaussian maps on projective spaces and complete intersection curves,
computed as exact rational matrices."""

from .cring import CompleteIntersection, curve_invariants, h0_line, h1_line, hilbert_function, normal_form
from .errors import (
    CertificationError,
    DimensionError,
    InvalidInputError,
    SpecParseError,
    UndefinedZetaError,
    UnsupportedTwistError,
)
from .gaussmaps import GaussMapReport, eta_rank, gauss_ci, gauss_pn, mu_h, rank_bounds
from .polyring import SparsePolynomial, monomial_basis
from .specs import PRESETS, CurveSpec, load_curve_spec, parse_curve_spec, preset

__version__ = "0.1.0"
