"""
Airy functions, their negative-axis zeros, and the rotated error function.

Ai and Ai' are evaluated with the Cephes routines shipped in
``scipy.special``; away from the zeros these are good to ~1e-15 relative,
and on the negative axis the absolute error is bounded by the conditioning
of the oscillating phase (roughly ``|x|**1.5 * eps``).  Zeros are located
here by Newton iteration from the leading asymptotic estimate.

The rotated error function ``erf(exp(-i pi/4) sqrt(Q))`` is expressed
through the real Fresnel integrals,

    erf(exp(-i pi/4) u) = (1 - i) * [C(t) + i S(t)],   t = u * sqrt(2/pi),

with ``C(t) = int_0^t cos(pi s^2/2) ds`` and ``S`` likewise with sine.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np
from scipy import special as _sp

from .errors import AccuracyError, DomainError

__all__ = [
    "AiryZero",
    "airy_ai",
    "airy_ai_prime",
    "airy_zero",
    "airy_zero_asymptotic",
    "erf_rotated",
]

NEWTON_MAXITER = 20
NEWTON_RTOL = 1e-14


def _check_finite(x, name="x"):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return arr


def _unwrap(arr):
    return float(arr) if arr.ndim == 0 else arr


def airy_ai(x):
    """Airy function Ai(x) for real scalar or array ``x``.

    Large positive arguments underflow smoothly to 0.
    """
    arr = _check_finite(x)
    ai, _, _, _ = _sp.airy(arr)
    return _unwrap(np.asarray(ai))


def airy_ai_prime(x):
    """Derivative Ai'(x) for real scalar or array ``x``."""
    arr = _check_finite(x)
    _, aip, _, _ = _sp.airy(arr)
    return _unwrap(np.asarray(aip))


@dataclass(frozen=True)
class AiryZero:
    """The ``index``-th negative zero of Ai, with Ai' evaluated there."""

    index: int
    value: float
    ai_prime_at_zero: float


def _check_index(n):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"zero index must be a positive integer, got {n!r}")
    return int(n)


def airy_zero_asymptotic(n):
    """Leading asymptotic estimate ``-[(3 pi / 2)(n - 1/4)]**(2/3)``."""
    n = _check_index(n)
    return -((1.5 * math.pi * (n - 0.25)) ** (2.0 / 3.0))


@lru_cache(maxsize=4096)
def airy_zero(n):
    """Refine the n-th zero of Ai by Newton iteration.

    The asymptotic estimate is within 1% even for ``n = 1``, which keeps the
    iteration inside the basin of the intended zero.
    """
    n = _check_index(n)
    x = airy_zero_asymptotic(n)
    for _ in range(NEWTON_MAXITER):
        ai, aip, _, _ = _sp.airy(x)
        step = ai / aip
        x -= step
        if abs(step) < NEWTON_RTOL * abs(x):
            break
    else:
        raise AccuracyError(f"Newton iteration for zero {n} did not converge", best=x)
    return AiryZero(index=n, value=float(x), ai_prime_at_zero=float(_sp.airy(x)[1]))


def erf_rotated(Q):
    """Return ``erf(exp(-i pi/4) * sqrt(Q))`` for ``Q >= 0``.

    Accepts a scalar or an array; the result is complex.
    """
    arr = _check_finite(Q, "Q")
    if np.any(arr < 0):
        raise DomainError(f"Q must be nonnegative, got {Q!r}")
    t = np.sqrt(arr) * math.sqrt(2.0 / math.pi)
    s, c = _sp.fresnel(t)
    value = (1.0 - 1.0j) * (c + 1.0j * s)
    return complex(value) if value.ndim == 0 else value
