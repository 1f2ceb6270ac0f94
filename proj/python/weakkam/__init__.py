"""Discrete weak KAM solver: discounted Lax-Oleinik fixed points, critical
value, Peierls barrier, Aubry set, Mather measures and the selected limit
solution u0.

Instances are plain dicts mirroring the CLI JSON schema:
{"labels": [...], "mode": "rational"|"float64", "cost": [[...]]} with
rational entries as integers or "p/q" strings.
"""

import json as _json

from . import _core

__all__ = [
    "gen_random_rational",
    "gen_random_float",
    "gen_torus",
    "solve",
    "critical",
    "barrier",
    "mather",
    "u0",
    "sweep",
    "check",
]


def _dump(instance):
    if isinstance(instance, str):
        return instance
    return _json.dumps(instance)


def gen_random_rational(n, seed, lo="0", hi="1", denominator_bound=8):
    return _json.loads(_core.gen_random_rational(n, seed, str(lo), str(hi),
                                                 denominator_bound))


def gen_random_float(n, seed, lo=0.0, hi=1.0):
    return _json.loads(_core.gen_random_float(n, seed, lo, hi))


def gen_torus(grid_size, potential):
    return _json.loads(_core.gen_torus(grid_size, [str(p) for p in potential]))


def solve(instance, lam, beta="0"):
    """Solve u = T_lambda(u) + beta; lam and beta accept "p/q" strings."""
    return _json.loads(_core.solve(_dump(instance), str(lam), str(beta)))


def critical(instance):
    """Critical value alpha via Karp, the LP and the discounted estimate."""
    return _json.loads(_core.critical(_dump(instance)))


def barrier(instance):
    """alpha, Mane potential, Peierls barrier, Aubry set, critical edges."""
    return _json.loads(_core.barrier(_dump(instance)))


def mather(instance):
    """Extreme Mather measures (uniform circuit measures)."""
    return _json.loads(_core.mather(_dump(instance)))


def u0(instance):
    """The selected solution u0 = lim u_lambda^alpha with its measures."""
    return _json.loads(_core.u0(_dump(instance)))


def sweep(instance, schedule=(), style="decimal"):
    """Convergence sweep CSV; empty schedule means lambda_k = 1 - 2^-k."""
    return _core.sweep(_dump(instance), [str(l) for l in schedule], style)


def check(instance):
    """Run the full property battery; returns [(name, passed, detail)]."""
    return _core.check(_dump(instance))
