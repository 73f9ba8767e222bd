"""Certificates of nonnegativity over compact semialgebraic sets.

Thin dict-based wrapper over the C++ core. Problems and certificates use the
same JSON schema as the command line tool.
"""

import json

from certkit import _certkit

__all__ = [
    "certify",
    "verify",
    "sizes",
    "ball_bound",
    "cover",
    "rho_schedule",
]


def certify(problem, exact=True):
    """Search for a certificate. Returns {"found", "outcomes", "certificate"?}."""
    return json.loads(_certkit.certify(json.dumps(problem), exact))


def verify(problem, certificate, exact=True, tol=1e-8):
    """Re-check a certificate against a problem; independent of the search path."""
    return json.loads(_certkit.verify(json.dumps(problem), json.dumps(certificate), exact, tol))


def sizes(shape, n, d, m, chain_cover=False):
    """Template size table entry; chain_cover=True adds the fully sparse column."""
    return json.loads(_certkit.sizes(shape, n, d, m, chain_cover))


def ball_bound(g, variables, r="1"):
    """Upper bound of |g| on the radius-r ball, via the weighted coefficient norm."""
    return _certkit.ball_bound(g, list(variables), str(r))


def cover(p, constraints, variables):
    """Inferred variable cover: cliques, constraint assignment, RIP flag."""
    return json.loads(_certkit.cover(p, list(constraints), list(variables)))


def rho_schedule(eps, big_m, delta, upper, m):
    """Degree and leading coefficient for the multiplier lower-bound recipe."""
    return json.loads(_certkit.rho_schedule(str(eps), str(big_m), str(delta), str(upper), m))
