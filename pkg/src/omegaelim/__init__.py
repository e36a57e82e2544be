"""Exact evaluation of MacMahon's Omega operator on Elliott rational functions."""

from .algebra import LaurentPolynomial, Monomial, VariableOrder, is_small
from .elliott import (
    ElliottError,
    ElliottRational,
    Factor,
    PoleError,
    classify,
    combine,
    normalize_in,
    rational_equal,
    substitute,
)
from .omega import (
    DivergenceError,
    EliminationStrategy,
    HiddenRootError,
    contribution,
    invert_mod,
    omega_eliminate_all,
    omega_eliminate_one,
    partial_fractions,
    reduce_mod,
)
from .oracle import OracleError, expand, omega_by_definition, verify
from .parser import NotElliottError, ParseError, parse

__all__ = [
    "LaurentPolynomial", "Monomial", "VariableOrder", "is_small",
    "ElliottError", "ElliottRational", "Factor", "PoleError",
    "classify", "combine", "normalize_in", "rational_equal", "substitute",
    "DivergenceError", "EliminationStrategy", "HiddenRootError", "contribution", "invert_mod",
    "omega_eliminate_all", "omega_eliminate_one", "partial_fractions", "reduce_mod",
    "OracleError", "expand", "omega_by_definition", "verify",
    "NotElliottError", "ParseError", "parse",
]

__version__ = "0.1.0"
