"""Exact Donaldson-Futaki invariants of complete intersections.

The ambient is a Grassmannian G(k, N) or a projective space with a diagonal
one-parameter subgroup; all integrals are evaluated by torus localization in
exact rational arithmetic.
"""
from .core import (
    Check,
    ExpansionCoeffs,
    FutakiReport,
    HypothesisError,
    Scenario,
    chow_weight,
    ci_expansion,
    cor33_futaki,
    cor44_futaki,
    futaki_ci_general,
    futaki_from_expansions,
    lu_futaki,
    thm31_futaki,
    thm41_futaki,
)
from .grassmann import Ambient, BundleExpr, OnePS

__version__ = "0.1.0"

__all__ = [
    "Ambient",
    "BundleExpr",
    "Check",
    "ExpansionCoeffs",
    "FutakiReport",
    "HypothesisError",
    "OnePS",
    "Scenario",
    "chow_weight",
    "ci_expansion",
    "cor33_futaki",
    "cor44_futaki",
    "futaki_ci_general",
    "futaki_from_expansions",
    "lu_futaki",
    "thm31_futaki",
    "thm41_futaki",
]
