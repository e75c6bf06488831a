"""Python front end for the freemeixner verification workbench.

Rationals are returned as ``fractions.Fraction``; anything accepted by
``Fraction`` (int, str, Fraction) may be passed in.
"""

import json
from fractions import Fraction

from . import _core
from ._core import (
    CapacityError,
    ConfigError,
    Error,
    PreconditionError,
    SUITES,
    __version__,
    enumerate_nc,
    enumerate_nc_min2,
    fock_dimension,
)


def _q(x):
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _poly(coeffs):
    return [Fraction(c) for c in coeffs]


def meixner_poly(n, lam, eta, k):
    """Coefficients (lowest degree first) of the monic orthogonal polynomial P_n."""
    return _poly(_core.meixner_poly(n, _q(lam), _q(eta), _q(k)))


def genfun_1d_coefficient(n, lam, eta, k):
    """Coefficient of z^n in the one-variable resolvent generating function."""
    return _poly(_core.genfun_1d_coefficient(n, _q(lam), _q(eta), _q(k)))


def vacuum_moment(n, lam, eta, k):
    return Fraction(_core.vacuum_moment(n, _q(lam), _q(eta), _q(k)))


def free_cumulants(order, lam, eta, k):
    return [Fraction(c) for c in _core.free_cumulants(order, _q(lam), _q(eta), _q(k))]


def moment_from_cumulants(cumulants, n):
    return Fraction(_core.moment_from_cumulants([_q(c) for c in cumulants], n))


def demo_config():
    return json.loads(_core.demo_config())


def validate_config(config):
    """Canonical form of a configuration dict; raises ConfigError with the JSON pointer."""
    return json.loads(_core.validate_config(json.dumps(config)))


def run(config, parallel=True):
    """Run the selected suites and return the report dict."""
    return json.loads(_core.run(json.dumps(config), parallel))


def run_suite(suite, config):
    return _core.run_suite(suite, json.dumps(config))


__all__ = [
    "CapacityError",
    "ConfigError",
    "Error",
    "PreconditionError",
    "SUITES",
    "__version__",
    "demo_config",
    "enumerate_nc",
    "enumerate_nc_min2",
    "fock_dimension",
    "free_cumulants",
    "genfun_1d_coefficient",
    "meixner_poly",
    "moment_from_cumulants",
    "run",
    "run_suite",
    "vacuum_moment",
    "validate_config",
]
