"""Numerical checks for anisotropic generalized Orlicz integrands.

Thin re-export of the compiled core: integrand families (`Phi`), grid convex
minorants (`Envelope`), the brute-force almost-convexity scan, and the text
config pipeline (`run`) that mirrors the phicheck CLI.
"""

from ._core import (
    ConfigError,
    Envelope,
    NumericalError,
    Phi,
    almost_convex_bruteforce,
    canonical_config,
    run,
    __version__,
)

__all__ = [
    "ConfigError",
    "Envelope",
    "NumericalError",
    "Phi",
    "almost_convex_bruteforce",
    "canonical_config",
    "run",
    "__version__",
]
