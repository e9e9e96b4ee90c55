"""Numerical checks of Bessel-pair Hardy-Rellich and Poincare identities on H^N."""

import json

from ._hypbessel import (
    ConfigError,
    DimensionError,
    ParameterError,
    RangeError,
    coefficients,
    identities,
    lambda_one,
    ode_residual,
    psi,
    version,
    w_lambda,
)
from ._hypbessel import run_config as _run_config

__version__ = version()

__all__ = [
    "ConfigError",
    "DimensionError",
    "ParameterError",
    "RangeError",
    "coefficients",
    "hpw",
    "identities",
    "lambda_one",
    "ode_residual",
    "psi",
    "run",
    "sharpness",
    "verify",
    "version",
    "w_lambda",
]


def run(config, threads=None):
    """Run a configuration dict (same schema as the CLI report file) and return the report dict."""
    config = dict(config)
    config.setdefault("schema_version", 1)
    if threads is not None:
        config["threads"] = threads
    return json.loads(_run_config(json.dumps(config)))


def _single(job, **settings):
    return run({"jobs": [job], **settings})


def verify(identity="all", N=5, lam=0.0, profile="bump", flavor=None, modes=None, pair=None):
    """Assemble identities term by term; returns the list of records."""
    job = {"kind": "verify", "identities": [identity] if isinstance(identity, str) else list(identity),
           "dims": [N], "lambda": lam, "profile": profile}
    if flavor is not None:
        job["flavor"] = flavor
    if modes is not None:
        job["modes"] = list(modes)
    if pair is not None:
        job["pair"] = pair
    return _single(job)["records"]


def hpw(variant="plain", N=5, lam=0.0, profile="bump", flavor=None, modes=None):
    """Heisenberg-Pauli-Weyl product check; returns the single record."""
    job = {"kind": "hpw", "variant": variant, "dims": [N], "lambda": lam, "profile": profile}
    if flavor is not None:
        job["flavor"] = flavor
    if modes is not None:
        job["modes"] = list(modes)
    return _single(job)["records"][0]


def sharpness(constant="hardy-rellich", N=5, epsilons=(0.4, 0.2, 0.1, 0.05), lam="lambda1", exponent_shift=0.0):
    """Quotient scan along a saturating family; returns the single record."""
    job = {"kind": "sharpness", "constant": constant, "dims": [N], "lambda": lam,
           "epsilons": list(epsilons), "exponent_shift": exponent_shift}
    return _single(job)["records"][0]
