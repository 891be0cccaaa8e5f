"""Scenario definition, unit conventions and parameter validation.

Frequencies are angular (rad per unit time) in an abstract, self-consistent
unit system; by default hbar = m = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import trapezoid

from .errors import NonFiniteParameter, NonPositiveFrequency, PearsonOutOfRange

#: Relative tolerance used to decide whether omega == omega0.
RESONANCE_RTOL = 1e-12


def _finite(name: str, value) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError) as exc:
        raise NonFiniteParameter(f"{name} must be a real number, got {value!r}") from exc
    if not math.isfinite(value):
        raise NonFiniteParameter(f"{name} must be finite, got {value}")
    return value


def _positive(name: str, value) -> float:
    value = _finite(name, value)
    if value <= 0.0:
        raise NonPositiveFrequency(f"{name} must be > 0, got {value}")
    return value


def check_times(t) -> np.ndarray:
    """Return ``t`` as a float array, rejecting NaN/Inf."""
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteParameter("time values must be finite")
    return arr


@dataclass(frozen=True)
class UnitSystem:
    """Action and mass constants."""

    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "hbar", _positive("hbar", self.hbar))
        object.__setattr__(self, "mass", _positive("mass", self.mass))


@dataclass(frozen=True)
class WavepacketSpec:
    """A correlated Gaussian wavepacket placed in a static harmonic trap.

    Parameters
    ----------
    omega0 : float
        Intrinsic spread frequency of the initial packet; fixes its width
        ``sigma0 = sqrt(hbar / (m omega0))``.
    omega : float
        Natural frequency of the confining oscillator.
    gamma : float
        Dimensionless position-momentum correlation of the initial state.
    units : UnitSystem
        hbar and mass.
    """

    omega0: float
    omega: float
    gamma: float = 0.0
    units: UnitSystem = field(default_factory=UnitSystem)

    def __post_init__(self):
        object.__setattr__(self, "omega0", _positive("omega0", self.omega0))
        object.__setattr__(self, "omega", _positive("omega", self.omega))
        object.__setattr__(self, "gamma", _finite("gamma", self.gamma))
        if not isinstance(self.units, UnitSystem):
            raise TypeError("units must be a UnitSystem")

    @property
    def sigma0(self) -> float:
        """Initial width sqrt(hbar / (m omega0))."""
        return math.sqrt(self.units.hbar / (self.units.mass * self.omega0))

    @property
    def tau0(self) -> float:
        """Rayleigh time 1/omega0."""
        return 1.0 / self.omega0

    @property
    def period(self) -> float:
        """Gouy period pi/omega (half the classical oscillation period)."""
        return math.pi / self.omega

    @property
    def pearson(self) -> float:
        return gamma_to_pearson(self.gamma)

    @property
    def is_resonant(self) -> bool:
        return abs(self.omega - self.omega0) <= RESONANCE_RTOL * self.omega0

    def replace(self, **changes) -> "WavepacketSpec":
        params = dict(omega0=self.omega0, omega=self.omega, gamma=self.gamma, units=self.units)
        params.update(changes)
        return WavepacketSpec(**params)


def make_spec(omega0, omega, gamma=0.0, units: UnitSystem | None = None) -> WavepacketSpec:
    """Build a validated :class:`WavepacketSpec` (hbar = m = 1 unless given)."""
    return WavepacketSpec(omega0, omega, gamma, units if units is not None else UnitSystem())


def pearson_to_gamma(p) -> float:
    """Map a Pearson coefficient P in (-1, 1) to gamma = P / sqrt(1 - P^2)."""
    p = _finite("P", p)
    if abs(p) >= 1.0:
        raise PearsonOutOfRange(f"|P| must be < 1, got {p}")
    return p / math.sqrt((1.0 - p) * (1.0 + p))


def gamma_to_pearson(gamma) -> float:
    """Inverse map, P = gamma / sqrt(1 + gamma^2)."""
    gamma = _finite("gamma", gamma)
    return gamma / math.hypot(1.0, gamma)


@dataclass(frozen=True, eq=False)
class ComplexField:
    """A wavefunction sampled on an ascending 1-D grid at time ``t``."""

    xs: np.ndarray
    values: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if xs.ndim != 1 or xs.shape != values.shape:
            raise ValueError("xs and values must be 1-D arrays of equal length")
        if xs.size < 2 or np.any(np.diff(xs) <= 0):
            raise ValueError("xs must be strictly ascending with at least two points")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "t", float(self.t))

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def norm(self) -> float:
        """Trapezoid estimate of the integral of |psi|^2."""
        return float(trapezoid(self.density, self.xs))
