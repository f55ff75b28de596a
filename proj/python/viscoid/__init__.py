"""Structural identifiability of spring-dashpot viscoelastic networks."""

import json
from fractions import Fraction

from . import _core
from ._core import (
    ParseError,
    canonical,
    param_names,
    random_network,
    structure_key,
    table_combine,
    tables,
    type_of,
)

__all__ = [
    "ParseError",
    "analyze",
    "canonical",
    "derive",
    "fiber",
    "jacobian_rank",
    "param_names",
    "random_network",
    "resultant",
    "structure_key",
    "table_combine",
    "tables",
    "type_of",
]


def _text(values):
    return [str(Fraction(v)) for v in values]


def derive(expr):
    """Constitutive equation, text forms and normalized coefficients."""
    return json.loads(_core.derive_json(expr))


def analyze(expr, verify=False, trials=3, seed=0):
    """Full identifiability report as a dict."""
    return json.loads(_core.analyze_json(expr, verify, trials, seed))


def fiber(expr, seed=0, starts=200, base=None):
    """Parameter points sharing the base point's coefficients."""
    return json.loads(_core.fiber_json(expr, seed, starts, None if base is None else _text(base)))


def resultant(p, q):
    """Exact resultant; coefficients in ascending powers."""
    return Fraction(_core.resultant(_text(p), _text(q)))


def jacobian_rank(expr, values):
    return _core.jacobian_rank(expr, _text(values))
