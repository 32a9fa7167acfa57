"""Exact calculus on diolic algebras A + P with A = Q[x1..xn], P = A^m."""

import json as _json

from ._diolic import (  # noqa: F401
    DimensionError,
    DomainError,
    InternalError,
    ParseError,
    Poly,
    ResourceError,
    __version__,
    normalize_problem,
    poisson_bracket,
    star,
)
from . import _diolic


def check(problem, max_dim=""):
    """Run the checker for a problem (JSON text or dict); returns the report dict."""
    text = problem if isinstance(problem, str) else _json.dumps(problem)
    return _json.loads(_diolic._check(text, max_dim))


def bracket(kind, left, right, n=None):
    """Bracket of two operands; non-symbol operands may be dicts."""
    enc = lambda x: x if isinstance(x, str) else _json.dumps(x)
    return _json.loads(_diolic._bracket(kind, enc(left), enc(right), n))


def der_cohomology(n, m, D):
    return _json.loads(_diolic._der_cohomology(n, m, D))


def ce_cohomology(problem):
    text = problem if isinstance(problem, str) else _json.dumps(problem)
    return _json.loads(_diolic._ce_cohomology(text))
