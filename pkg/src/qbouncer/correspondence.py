"""
Fourier coefficients of the quantum and classical bouncer densities.

Convention (shared by every route): the coefficient of a density ``rho`` at
dimensionless momentum ``q`` is

    c(q) = (1 / 2 pi) * int rho(zeta) exp(-i q zeta) dzeta,

and the density is recovered as ``int c(q) exp(+i q zeta) dq``.  With
``Q = q h_n`` the quantum coefficient of state ``n`` expands as

    c(q) = exp(-iQ) / (2 pi Ai'(a_n)**2) * sum_k (-i q)**k / k! * I_k,
    I_k  = int_{a_n}^inf x**k Ai(x)**2 dx,

and the moments obey the exact reduction

    I_k = a_n**k Ai'(a_n)**2 / (2k+1) + k(k-1)(k-2) / (2(2k+1)) * I_{k-3}.

Keeping only the first term gives ``exp(-iQ)/(2 pi) * sum (iQ)**k / (k!(2k+1))
= exp(-iQ)/(2 pi) * int_0^1 exp(iQ t**2) dt``, which is also what the
classical density produces after the substitution ``zeta = h (1 - t**2)``.
"""

from dataclasses import dataclass
import math

import mpmath
import numpy as np

from .bouncer import (DensityGrid, density_function, density_cutoff, make_state,
                      node_points)
from .errors import AccuracyError, DomainError
from .quadrature import integrate_adaptive, integrate_oscillatory
from .special import erf_rotated

__all__ = [
    "FourierCoefficient",
    "AlbrightMoment",
    "ConvergenceReport",
    "WindowPolicy",
    "albright_moment",
    "leading_series",
    "leading_closed_form",
    "quantum_coefficient_numeric",
    "quantum_coefficient_albright",
    "quantum_coefficient_closed",
    "classical_coefficient",
    "local_average",
    "averaged_density",
    "interior_l1_error",
    "fit_power_law",
    "convergence_study",
]

TWO_PI = 2.0 * math.pi
MAX_OSCILLATION = 1.0e3
ROUTES = ("numeric", "albright0", "albright1", "closed_form", "classical")


@dataclass(frozen=True)
class FourierCoefficient:
    q: float
    Q: float
    value: complex
    route: str


@dataclass(frozen=True)
class AlbrightMoment:
    n: int
    k: int
    value: float


def albright_moment(state, k):
    """``I_k = int_{a_n}^inf x**k Ai(x)**2 dx`` from the exact recursion.

    For ``k < 3`` the correction factor ``k(k-1)(k-2)`` vanishes and
    ``I_k = a_n**k Ai'(a_n)**2 / (2k+1)``.
    """
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 0:
        raise DomainError(f"k must be a nonnegative integer, got {k!r}")
    a, d2 = state.a_n, state.ai_prime ** 2
    j = int(k) % 3
    value = a ** j * d2 / (2 * j + 1)
    while j < k:
        j += 3
        value = a ** j * d2 / (2 * j + 1) + j * (j - 1) * (j - 2) / (2.0 * (2 * j + 1)) * value
    return AlbrightMoment(state.n, int(k), value)


def _leading_factor(k):
    return mpmath.mpf(1) / (2 * k + 1)


def _correction_factor(k):
    return mpmath.mpf(k * (k - 1) * (k - 2)) / (2 * (2 * k + 1) * (2 * k - 5))


def _series(Q, factors, tail=mpmath.mpf("1e-22")):
    """``sum_k (iQ)**k / k! * factor(k)`` in extended precision.

    Terms alternate in sign with magnitudes up to ~exp(|Q|), so the working
    precision is raised by |Q| / ln(10) digits to absorb the cancellation.
    The factors grow at most linearly in k, which the stopping rule allows for.
    """
    dps = 30 + int(abs(Q) / math.log(10.0))
    with mpmath.workdps(dps):
        iq = mpmath.mpc(0, mpmath.mpf(Q))
        term = mpmath.mpc(1)
        total = mpmath.mpc(0)
        k = 0
        while True:
            total += term * factors(k)
            k += 1
            term *= iq / k
            if k > abs(Q) + 2 and abs(term) * (k + 1) < tail:
                break
            if k > 100_000:
                raise AccuracyError("series did not converge")
        return complex(total)


def leading_series(Q):
    """``sum_k (iQ)**k / (k! (2k+1))``, summed term by term."""
    return _series(Q, _leading_factor)


def leading_closed_form(Q):
    """``int_0^1 exp(iQ t**2) dt = sqrt(pi) / (2 sqrt(Q)) exp(i pi/4) erf(exp(-i pi/4) sqrt(Q))``.

    Negative ``Q`` is handled by conjugation, ``Q = 0`` by its limit 1.
    """
    if Q < 0:
        return leading_closed_form(-Q).conjugate()
    if Q == 0:
        return 1.0 + 0.0j
    rootQ = math.sqrt(Q)
    return (math.sqrt(math.pi) / (2.0 * rootQ)) * complex(math.cos(math.pi / 4), math.sin(math.pi / 4)) \
        * erf_rotated(Q)


def _phase(Q):
    return complex(math.cos(Q), -math.sin(Q))


def _check_q(q):
    if not math.isfinite(q):
        raise DomainError(f"q must be finite, got {q!r}")
    return float(q)


def quantum_coefficient_numeric(state, q, tol=1e-13):
    """Coefficient of the quantum density by direct oscillatory quadrature."""
    q = _check_q(q)
    Q = q * state.turning_point
    if abs(Q) > MAX_OSCILLATION:
        raise AccuracyError(f"|Q| = {abs(Q):g} exceeds the oscillation budget {MAX_OSCILLATION:g}")
    Z, remainder = density_cutoff(state, tol)
    value = integrate_oscillatory(density_function(state), q, 0.0, Z, tol=tol,
                                  points=[*node_points(state), state.turning_point])
    return FourierCoefficient(q, Q, value / TWO_PI, "numeric")


def quantum_coefficient_albright(state, q, order=1):
    """Coefficient from the moment series, keeping ``order`` correction layers.

    ``order=0`` keeps only the leading moments ``a_n**k Ai'**2 / (2k+1)``;
    ``order=1`` adds the first iteration of the reduction, whose terms carry
    an extra factor ``a_n**-3``.
    """
    if order not in (0, 1):
        raise DomainError(f"order must be 0 or 1, got {order!r}")
    q = _check_q(q)
    Q = q * state.turning_point
    if order == 0:
        s = _series(Q, _leading_factor)
    else:
        inv_a3 = mpmath.mpf(state.a_n) ** -3
        s = _series(Q, lambda k: _leading_factor(k) + _correction_factor(k) * inv_a3)
    return FourierCoefficient(q, Q, _phase(Q) * s / TWO_PI, f"albright{order}")


def quantum_coefficient_closed(state, q):
    """Leading-order coefficient in closed form via the rotated error function."""
    q = _check_q(q)
    Q = q * state.turning_point
    return FourierCoefficient(q, Q, _phase(Q) * leading_closed_form(Q) / TWO_PI, "closed_form")


def classical_coefficient(h, q, tol=1e-13):
    """Coefficient of the classical density for drop height ``h``, by quadrature.

    The turning-point singularity is removed by ``zeta = h (1 - s**2)``:
    the density times the Jacobian, ``2 h s / (2 sqrt(h * h s**2))``, is
    identically 1, leaving ``int_0^1 exp(-i Q (1 - s**2)) ds``.  The distance
    to the turning point is carried as ``h s**2`` rather than recomputed as
    ``h - zeta``, which would cancel catastrophically near ``s = 0``.
    """
    if not (math.isfinite(h) and h > 0):
        raise DomainError(f"height must be positive, got {h!r}")
    q = _check_q(q)
    Q = q * h

    def integrand(s):
        below = h * s * s
        jacobian_density = (2.0 * h * s) / (2.0 * np.sqrt(h * below))
        return jacobian_density * np.exp(-1j * q * (h - below))

    # Breakpoints where the phase Q (1 - s**2) crosses a multiple of pi/2.
    m = np.arange(1, int(abs(Q) / (0.5 * math.pi)) + 1)
    points = np.sqrt(1.0 - m * 0.5 * math.pi / abs(Q)) if m.size else None
    value = integrate_adaptive(integrand, 0.0, 1.0, tol=tol, points=points).value
    return FourierCoefficient(q, Q, complex(value) / TWO_PI, "classical")


def local_average(density, center, epsilon, domain=(0.0, math.inf), tol=1e-12):
    """Mean of ``density`` over ``[center - epsilon, center + epsilon]``.

    ``density`` is either a vectorized callable, integrated by adaptive
    quadrature on ``domain``, or a :class:`DensityGrid`, integrated exactly
    as its piecewise-linear interpolant on the sampled range.
    """
    if not (math.isfinite(epsilon) and epsilon > 0):
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")
    lo, hi = center - epsilon, center + epsilon
    if isinstance(density, DensityGrid):
        x, y = density.coordinates, density.values
        if lo < x[0] or hi > x[-1]:
            raise DomainError(f"window [{lo:g}, {hi:g}] leaves the sampled range")
        inner = (x > lo) & (x < hi)
        xs = np.concatenate([[lo], x[inner], [hi]])
        ys = np.interp(xs, x, y)
        return float(np.trapezoid(ys, xs)) / (2.0 * epsilon)
    if lo < domain[0] or hi > domain[1]:
        raise DomainError(f"window [{lo:g}, {hi:g}] leaves the domain {domain}")
    res = integrate_adaptive(density, lo, hi, tol=tol * 2.0 * epsilon)
    return float(res.value) / (2.0 * epsilon)


@dataclass(frozen=True)
class WindowPolicy:
    """Smoothing window and comparison region for the local-average study.

    The half-width at height ``zeta`` is ``periods * pi / sqrt(h - zeta)``,
    i.e. ``periods`` local oscillations of the quantum density, shrunk where
    needed to keep the window inside ``[0, upper_clip * h]``.
    """

    periods: float = 2.0
    upper_clip: float = 0.95
    interior: tuple = (0.05, 0.90)
    grid_points: int = 400
    q_grid: tuple = (1.0, 2.0, 5.0, 10.0, 20.0)
    fit_Q: float = 5.0

    def epsilon(self, h, zeta):
        eps = self.periods * math.pi / math.sqrt(h - zeta)
        return min(eps, zeta, self.upper_clip * h - zeta)

    def describe(self):
        return (f"eps=min({self.periods:g}*pi/sqrt(h-z), z, {self.upper_clip:g}h-z); "
                f"interior=[{self.interior[0]:g}h, {self.interior[1]:g}h]")


def averaged_density(state, grid, policy=WindowPolicy()):
    """Locally averaged quantum density on ``grid`` (heights inside the window range)."""
    h = state.turning_point
    rho = density_function(state)
    values = [local_average(rho, z, policy.epsilon(h, z)) for z in grid]
    return DensityGrid(np.asarray(grid, dtype=float), np.asarray(values), "averaged")


def interior_l1_error(state, policy=WindowPolicy()):
    """``int |<rho_qm>_eps - rho_cl| dzeta`` over the interior region."""
    h = state.turning_point
    lo, hi = policy.interior
    grid = np.linspace(lo * h, hi * h, policy.grid_points)
    avg = averaged_density(state, grid, policy).values
    cl = 0.5 / np.sqrt(h * (h - grid))
    return float(np.trapezoid(np.abs(avg - cl), grid))


def fit_power_law(x, y):
    """Least-squares slope of ``log y`` against ``log x``."""
    slope, _ = np.polyfit(np.log(np.asarray(x, float)), np.log(np.asarray(y, float)), 1)
    return float(slope)


@dataclass(frozen=True)
class ConvergenceReport:
    n: int
    a_n: float
    epsilon_policy: str
    interior_fraction: float
    l1_error: float
    coefficient_deviation: float
    deviation_at_fit_Q: float
    fitted_exponent: float

    def __post_init__(self):
        if not self.l1_error >= 0:
            raise ValueError("l1_error must be nonnegative")
        if not 0 < self.interior_fraction < 1:
            raise ValueError("interior_fraction must lie in (0, 1)")


def convergence_study(n_list, policy=WindowPolicy()):
    """Per-state comparison of quantum and classical densities.

    For each ``n``: the interior L1 distance after local averaging, the
    largest ``|numeric - classical|`` coefficient gap over ``policy.q_grid``
    (values of ``Q``), and the gap ``|numeric - closed|`` at ``policy.fit_Q``.
    The exponent fitted to the latter against ``|a_n|`` over the whole list
    is attached to every report.
    """
    rows = []
    for n in n_list:
        state = make_state(n)
        h = state.turning_point
        gaps = [abs(quantum_coefficient_numeric(state, Q / h).value
                    - classical_coefficient(h, Q / h).value) for Q in policy.q_grid]
        q_fit = policy.fit_Q / h
        fit_gap = abs(quantum_coefficient_numeric(state, q_fit).value
                      - quantum_coefficient_closed(state, q_fit).value)
        rows.append((state, interior_l1_error(state, policy), max(gaps), fit_gap))

    if len(rows) >= 2:
        exponent = fit_power_law([abs(s.a_n) for s, *_ in rows], [r[3] for r in rows])
    else:
        exponent = math.nan
    fraction = policy.interior[1] - policy.interior[0]
    return [ConvergenceReport(s.n, s.a_n, policy.describe(), fraction, l1, dev, gap, exponent)
            for s, l1, dev, gap in rows]
