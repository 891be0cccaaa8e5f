"""Covariance matrices, squeezing and Wigner functions of single-mode Gaussian states.

Second moments are dimensionless: x in units of sigma0 and p in units of
hbar/sigma0. In this convention a pure state has det = 1/4 and the purity
is 1 / (2 sqrt(det)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from .core import ComplexField, WavepacketSpec, _finite, check_times
from .errors import GridTooCoarse, NotPositiveDefinite, NotResonant, UncertaintyViolation

#: Slack allowed below the pure-state determinant.
UNCERTAINTY_SLACK = 1e-12


@dataclass(frozen=True)
class CovarianceState:
    """Symmetric 2x2 covariance [[sxx, sxp], [sxp, spp]] plus displacement ``d``."""

    sxx: float
    sxp: float
    spp: float
    d: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        for name in ("sxx", "sxp", "spp"):
            object.__setattr__(self, name, _finite(name, getattr(self, name)))
        d = tuple(_finite("d", v) for v in self.d)
        if len(d) != 2:
            raise ValueError("d must have two components")
        object.__setattr__(self, "d", d)
        if self.sxx <= 0 or self.spp <= 0 or self.det <= 0:
            raise NotPositiveDefinite(f"covariance {self.matrix.tolist()} is not positive definite")
        if self.det < 0.25 - UNCERTAINTY_SLACK:
            raise UncertaintyViolation(f"det = {self.det!r} is below 1/4")

    @property
    def det(self) -> float:
        return self.sxx * self.spp - self.sxp * self.sxp

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.sxx, self.sxp], [self.sxp, self.spp]])

    @property
    def inverse(self) -> np.ndarray:
        return np.array([[self.spp, -self.sxp], [-self.sxp, self.sxx]]) / self.det

    @property
    def pearson(self) -> float:
        return self.sxp / math.sqrt(self.sxx * self.spp)

    @classmethod
    def from_matrix(cls, m, d=(0.0, 0.0)) -> "CovarianceState":
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2) or m[0, 1] != m[1, 0]:
            raise ValueError("expected a symmetric 2x2 matrix")
        return cls(m[0, 0], m[0, 1], m[1, 1], d)


@dataclass(frozen=True)
class SqueezeParams:
    """Squeeze magnitude r >= 0 and orientation phi, stored in (-pi, pi]."""

    r: float
    phi: float

    def __post_init__(self):
        r = _finite("r", self.r)
        if r < 0:
            raise ValueError(f"r must be >= 0, got {r}")
        phi = math.remainder(_finite("phi", self.phi), 2 * math.pi)
        if phi == -math.pi:
            phi = math.pi
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "phi", phi)


def initial_covariance(gamma) -> CovarianceState:
    """1/2 [[1, gamma], [gamma, 1 + gamma^2]]."""
    g = _finite("gamma", gamma)
    return CovarianceState(0.5, 0.5 * g, 0.5 * (1 + g * g))


def squeezed_covariance(params: SqueezeParams) -> CovarianceState:
    ch, sh = math.cosh(2 * params.r), math.sinh(2 * params.r)
    c, s = math.cos(params.phi), math.sin(params.phi)
    return CovarianceState(0.5 * (ch - sh * c), -0.5 * sh * s, 0.5 * (ch + sh * c))


def gamma_from_squeeze(params: SqueezeParams) -> float:
    """Correlation imprinted by a tilted squeeze, gamma = -sinh(2r) sin(phi)."""
    return -math.sinh(2 * params.r) * math.sin(params.phi)


def evolved_covariance(spec: WavepacketSpec, t: float) -> CovarianceState:
    """Covariance of the evolved packet at resonance (omega = omega0)."""
    if not spec.is_resonant:
        raise NotResonant(f"omega={spec.omega} differs from omega0={spec.omega0}")
    t = float(check_times(t))
    g = spec.gamma
    th = spec.omega * t
    s, c = math.sin(th), math.cos(th)
    cc = s * s + (g * s + c) ** 2
    x = g * s * c + math.cos(2 * th)
    return CovarianceState(0.5 * cc, 0.5 * g * x, (1 + g * g * x * x) / (2 * cc))


def free_covariance(t_over_tau) -> CovarianceState:
    """Free spreading of the uncorrelated packet after t/tau0 Rayleigh times."""
    a = _finite("t_over_tau", t_over_tau)
    return CovarianceState(0.5 * (1 + a * a), 0.5 * a, 0.5)


def purity(cov: CovarianceState) -> float:
    if cov.det <= 0:
        raise NotPositiveDefinite("purity needs a positive-definite covariance")
    return 1.0 / (2.0 * math.sqrt(cov.det))


def wigner_gaussian(cov: CovarianceState, x, p):
    """W(r) = exp[-(r - d)^T sigma^-1 (r - d) / 2] / (2 pi sqrt(det sigma)).

    Broadcasts over ``x`` and ``p``.
    """
    x = np.asarray(x, dtype=float) - cov.d[0]
    p = np.asarray(p, dtype=float) - cov.d[1]
    inv = cov.inverse
    q = inv[0, 0] * x * x + 2 * inv[0, 1] * x * p + inv[1, 1] * p * p
    return np.exp(-0.5 * q) / (2 * math.pi * math.sqrt(cov.det))


def wigner_from_wavefunction(field: ComplexField, x: float, p: float, hbar: float = 1.0) -> float:
    """Wigner function from its integral definition, by trapezoid in y.

    W(x, p) = 1/(pi hbar) int dy exp(2 i p y / hbar) psi*(x + y) psi(x - y)

    The field must sit on a uniform grid and ``x`` on its half-step lattice,
    so that x +- y both land on samples.

    Raises
    ------
    GridTooCoarse
        If |p| dy > pi hbar / 4 (the oscillating factor would alias).
    """
    xs, psi = field.xs, field.values
    dx = xs[1] - xs[0]
    if not np.allclose(np.diff(xs), dx, rtol=1e-9, atol=0):
        raise ValueError("wigner_from_wavefunction needs a uniform grid")
    if abs(p) * dx > math.pi * hbar / 4:
        raise GridTooCoarse(f"|p| dy = {abs(p) * dx:.3g} exceeds pi hbar/4")
    twice = 2 * (x - xs[0]) / dx  # index of x + y plus index of x - y
    k = int(round(twice))
    if abs(twice - k) > 1e-6 or not 0 <= k <= 2 * (xs.size - 1):
        raise ValueError(f"x = {x} is not on the half-step lattice of the grid")
    i = np.arange(max(0, k - xs.size + 1), min(k, xs.size - 1) + 1)
    j = k - i
    y = 0.5 * (xs[i] - xs[j])
    integrand = np.exp(2j * p * y / hbar) * np.conj(psi[i]) * psi[j]
    w = trapezoid(integrand, y) / (math.pi * hbar) if i.size > 1 else 0.0
    return float(np.real(w))
