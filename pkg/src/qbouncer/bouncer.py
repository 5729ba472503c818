"""
The quantum bouncer: a particle above a hard floor in uniform gravity.

Everything here is dimensionless.  Heights are measured in units of the
gravitational length ``l_g = (hbar**2 / (2 m**2 g))**(1/3)``, energies in
``m g l_g``, and momenta in ``m sqrt(g l_g)``.  In those units the n-th
eigenstate is ``psi(zeta) = Ai(a_n + zeta) / Ai'(a_n)``, its energy and
classical turning point are both ``-a_n``, and the classical density for a
drop height ``h`` is ``1 / (2 sqrt(h (h - zeta)))`` on ``[0, h)``.
Physical units appear only in :func:`gravitational_length` and in the
species table.
"""

from configparser import ConfigParser
from dataclasses import dataclass, field
from importlib import resources
import math
import os

import numpy as np
from scipy import constants

from .errors import AccuracyError, DomainError
from .quadrature import airy_squared_tail_bound, integrate_adaptive
from .special import AiryZero, airy_ai, airy_zero, airy_zero_asymptotic

__all__ = [
    "PhysicalParams",
    "BouncerState",
    "DensityGrid",
    "RegimeEstimate",
    "TailProbability",
    "gravitational_length",
    "make_state",
    "wavefunction",
    "quantum_density",
    "classical_density",
    "density_grid",
    "density_function",
    "tail_probability",
    "moment_z_quantum",
    "moment_z_classical",
    "moment_p_even_quantum",
    "regime_estimate",
    "load_species",
    "QUOTED_TAIL_PROBABILITIES",
]

HBAR = constants.hbar
TURNING_POINT_EXCLUSION = 1e-3
MAX_Z_MOMENT = 12
MAX_P_MOMENT = 6

# Decimal values quoted in the literature for the probability of finding the
# particle above the turning point.  They are carried as annotations only;
# the closed form and quadrature in :func:`tail_probability` disagree with
# them (see README).
QUOTED_TAIL_PROBABILITIES = {1: 0.25, 2: 0.20, 10: 0.016, 30: 0.0077}


@dataclass(frozen=True)
class PhysicalParams:
    mass: float
    gravity: float = 9.81
    planck_reduced: float = HBAR

    def __post_init__(self):
        for name in ("mass", "gravity", "planck_reduced"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")


def gravitational_length(params):
    """Gravitational length ``(hbar**2 / (2 m**2 g))**(1/3)`` in meters."""
    if not isinstance(params, PhysicalParams):
        raise DomainError(f"expected PhysicalParams, got {type(params).__name__}")
    return (params.planck_reduced ** 2 / (2.0 * params.mass ** 2 * params.gravity)) ** (1.0 / 3.0)


@dataclass(frozen=True)
class BouncerState:
    n: int
    zero: AiryZero
    turning_point: float
    energy: float

    @property
    def a_n(self):
        return self.zero.value

    @property
    def ai_prime(self):
        return self.zero.ai_prime_at_zero


def make_state(n):
    """Eigenstate ``n`` with its refined Airy zero."""
    zero = airy_zero(n)
    h = -zero.value
    return BouncerState(n=zero.index, zero=zero, turning_point=h, energy=h)


def wavefunction(state, zeta):
    """Normalized eigenfunction at height ``zeta >= 0`` (scalar or array)."""
    z = np.asarray(zeta, dtype=float)
    if np.any(z < 0):
        raise DomainError("wavefunction is defined for zeta >= 0 only")
    psi = np.asarray(airy_ai(state.a_n + z)) / state.ai_prime
    return float(psi) if psi.ndim == 0 else psi


def density_function(state):
    scale = state.ai_prime ** 2

    def rho(zeta):
        return airy_ai(state.a_n + np.asarray(zeta)) ** 2 / scale

    return rho


@dataclass(frozen=True)
class DensityGrid:
    """A probability density sampled on an increasing grid of heights.

    ``complete`` declares that the grid covers the whole support, in which
    case the trapezoid integral must be 1 to within 1e-6.
    """

    coordinates: np.ndarray
    values: np.ndarray
    kind: str
    complete: bool = False

    KINDS = ("quantum", "classical", "averaged", "reconstructed")

    def __post_init__(self):
        coords = np.asarray(self.coordinates, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "coordinates", coords)
        object.__setattr__(self, "values", values)
        if self.kind not in self.KINDS:
            raise DomainError(f"unknown density kind {self.kind!r}")
        if coords.ndim != 1 or coords.shape != values.shape:
            raise DomainError("coordinates and values must be 1-d arrays of equal length")
        if np.any(coords < 0) or np.any(np.diff(coords) <= 0):
            raise DomainError("coordinates must be nonnegative and strictly increasing")
        if np.any(values < 0):
            raise DomainError("density values must be nonnegative")
        if self.complete and abs(self.integral() - 1.0) > 1e-6:
            raise DomainError(f"grid declared complete but integrates to {self.integral():.9f}")

    def integral(self):
        return float(np.trapezoid(self.values, self.coordinates))


def _check_grid(grid):
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1:
        raise DomainError("grid must be one-dimensional")
    if np.any(g < 0) or np.any(np.diff(g) <= 0):
        raise DomainError("grid must be nonnegative and strictly increasing")
    return g


def quantum_density(state, grid):
    g = _check_grid(grid)
    return DensityGrid(g, density_function(state)(g), "quantum")


def classical_density(h, grid):
    """Classical density for drop height ``h``; zero above ``h``.

    The grid must not contain ``h`` itself, where the density diverges.
    """
    if not (math.isfinite(h) and h > 0):
        raise DomainError(f"height must be positive, got {h!r}")
    g = _check_grid(grid)
    if np.any(g == h):
        raise DomainError("grid contains the turning point, where the classical density diverges")
    values = np.zeros_like(g)
    inside = g < h
    values[inside] = 0.5 / np.sqrt(h * (h - g[inside]))
    return DensityGrid(g, values, "classical")


def density_grid(h, size, extent=1.5, exclusion=TURNING_POINT_EXCLUSION):
    """Uniform grid on ``[0, extent*h]`` with the points inside
    ``|zeta - h| < exclusion*h`` removed."""
    g = np.linspace(0.0, extent * h, size)
    return g[np.abs(g - h) >= exclusion * h]


def node_points(state):
    """Interior nodes of the eigenfunction, from the asymptotic zero formula.

    Only used as quadrature breakpoints, so the asymptotic accuracy suffices.
    """
    return np.array([airy_zero_asymptotic(j) - state.a_n for j in range(1, state.n)])


def density_cutoff(state, tol, power=0, shift=None, factor=1.0):
    """Height beyond which the density tail is negligible.

    Returns ``(Z, remainder)`` such that
    ``int_Z^inf (factor * (x + shift))**power * rho(zeta) dzeta <= remainder < tol / 10``,
    with ``x = zeta - h`` the height above the turning point.  ``shift``
    defaults to the turning point, so the weight is ``(factor * zeta)**power``.
    """
    shift = state.turning_point if shift is None else shift
    airy_tail = airy_squared_tail_bound(power)
    scale = state.ai_prime ** 2
    X = 2.0
    for _ in range(200):
        remainder = (factor ** power) * (1.0 + abs(shift) / X) ** power * airy_tail(X) / scale
        if remainder < tol / 10:
            return state.turning_point + X, remainder
        X *= 1.25
    raise AccuracyError("could not bound the density tail")


def _integrate_density(state, weight, tol, cutoff):
    Z, remainder = cutoff
    rho = density_function(state)
    points = [*node_points(state), state.turning_point]
    res = integrate_adaptive(lambda z: weight(z) * rho(z), 0.0, Z, tol=tol, points=points)
    return res.value, res.error_estimate + remainder


@dataclass(frozen=True)
class TailProbability:
    n: int
    closed_form: float
    quadrature: float
    error_estimate: float
    quoted_value: float | None = None


def tail_probability(state, tol=1e-12, agreement=1e-8):
    """Probability of finding the particle above its turning point.

    Returns both ``[Ai'(0) / Ai'(a_n)]**2`` and an independent quadrature of
    the density over ``[h_n, inf)``; raises :class:`AccuracyError` when the
    two differ by more than ``agreement``.
    """
    closed = (airy_ai_prime_at_origin() / state.ai_prime) ** 2
    h = state.turning_point
    rho = density_function(state)
    tail = airy_squared_tail_bound(0)
    X = 2.0
    while tail(X) / state.ai_prime ** 2 >= tol / 10:
        X *= 1.25
    res = integrate_adaptive(rho, h, h + X, tol=tol, points=[h + 1.0, h + 3.0])
    quad = float(res.value)
    err = res.error_estimate + tail(X) / state.ai_prime ** 2
    if abs(quad - closed) > agreement:
        raise AccuracyError(
            f"tail probability mismatch for n={state.n}: closed form {closed!r}, "
            f"quadrature {quad!r}", best=quad, error_estimate=err)
    return TailProbability(state.n, closed, quad, err, QUOTED_TAIL_PROBABILITIES.get(state.n))


def airy_ai_prime_at_origin():
    """Ai'(0) = -3**(-1/3) / Gamma(1/3)."""
    return -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)


def _check_order(k, limit, what):
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 0:
        raise DomainError(f"moment order must be a nonnegative integer, got {k!r}")
    if k > limit:
        raise AccuracyError(f"{what} moments are budgeted up to order {limit}, got {k}")
    return int(k)


def moment_z_quantum(state, k, rtol=1e-12):
    """``<zeta**k>`` in state ``n``, by quadrature."""
    k = _check_order(k, MAX_Z_MOMENT, "position")
    scale = max(1.0, state.turning_point) ** k
    tol = rtol * scale
    value, _ = _integrate_density(state, lambda z: z ** k, tol,
                                  density_cutoff(state, tol, power=k))
    return float(value)


def moment_z_classical(h, k):
    """``<zeta**k>`` for the classical density of drop height ``h``:
    ``h**k k! sqrt(pi) / (2 Gamma(k + 3/2))``."""
    if not (math.isfinite(h) and h > 0):
        raise DomainError(f"height must be positive, got {h!r}")
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 0:
        raise DomainError(f"moment order must be a nonnegative integer, got {k!r}")
    log_beta = math.lgamma(k + 1) + 0.5 * math.log(math.pi) - math.log(2.0) - math.lgamma(k + 1.5)
    return h ** k * math.exp(log_beta)


def moment_p_even_quantum(state, k, rtol=1e-12):
    """``<p**(2k)>`` with momentum in units of ``m sqrt(g l_g)``.

    Uses ``p**2 = 2 (E - zeta)`` inside the expectation value, so the result
    is ``int [2 (E - zeta)]**k rho(zeta) dzeta``.  Odd powers of the
    momentum have zero expectation by parity and are not computed here.
    """
    k = _check_order(k, MAX_P_MOMENT, "momentum")
    E = state.energy
    scale = max(1.0, 2.0 * E) ** k
    tol = rtol * scale
    value, _ = _integrate_density(state, lambda z: (2.0 * (E - z)) ** k, tol,
                                  density_cutoff(state, tol, power=k, shift=0.0, factor=2.0))
    return float(value)


@dataclass(frozen=True)
class RegimeEstimate:
    species_label: str
    l_g: float
    drop_height: float
    n_estimate: float
    suppression: float


def regime_estimate(l_g, drop_height, label=""):
    """Quantum number reached by a drop from ``drop_height`` and the size
    ``1/|a_n|**3`` of the first correction layer at that level.

    ``n ~ (2 / (3 pi)) (h / l_g)**1.5``; the zero is taken from the
    asymptotic formula at the rounded quantum number.
    """
    for name, value in (("l_g", l_g), ("drop_height", drop_height)):
        if not (math.isfinite(value) and value > 0):
            raise DomainError(f"{name} must be positive, got {value!r}")
    n_est = (2.0 / (3.0 * math.pi)) * (drop_height / l_g) ** 1.5
    a_n = airy_zero_asymptotic(max(1, round(n_est)))
    return RegimeEstimate(label, l_g, drop_height, n_est, 1.0 / abs(a_n) ** 3)


@dataclass(frozen=True)
class Species:
    key: str
    label: str
    params: PhysicalParams = field(repr=False)

    @property
    def l_g(self):
        return gravitational_length(self.params)


def load_species(path=None):
    """Read the species table.

    ``path`` falls back to ``$BOUNCER_CONFIG`` and then to the bundled
    ``species.ini``.  Each section needs ``mass_kg``; ``gravity`` defaults
    to 9.81 and ``label`` to the section name.
    """
    path = path or os.environ.get("BOUNCER_CONFIG")
    parser = ConfigParser()
    if path:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    else:
        parser.read_string(resources.files(__package__).joinpath("species.ini")
                           .read_text(encoding="utf-8"))
    table = {}
    for key in parser.sections():
        sec = parser[key]
        if "mass_kg" not in sec:
            raise DomainError(f"species {key!r} has no mass_kg entry")
        params = PhysicalParams(mass=sec.getfloat("mass_kg"),
                                gravity=sec.getfloat("gravity", 9.81))
        table[key] = Species(key, sec.get("label", key), params)
    return table
