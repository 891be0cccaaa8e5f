"""Independent numeric propagation through the harmonic-oscillator kernel.

The evolved state is obtained by direct composite Gauss-Legendre quadrature of

    psi(x, t) = int dx' G(x, t; x', 0) psi0(x')

and the Gaussian parameters are read back from the samples. Nothing here calls
the closed forms except to size the integration window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from .core import ComplexField, UnitSystem, WavepacketSpec, check_times
from .dynamics import width
from .errors import KernelSingular, NotConverged, NotGaussian, TruncationTooTight

#: |sin(omega t)| at or below this is a focal instant for :func:`kernel`.
KERNEL_SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class QuadratureConfig:
    cut_radius_in_widths: float = 12.0
    panels: int = 64
    nodes_per_panel: int = 32
    singular_tol: float = 1e-3

    def __post_init__(self):
        if self.cut_radius_in_widths < 6:
            raise ValueError("cut_radius_in_widths must be >= 6")
        if self.panels < 1 or self.nodes_per_panel < 1:
            raise ValueError("panels and nodes_per_panel must be positive")
        if self.panels * self.nodes_per_panel < 256:
            raise ValueError("panels * nodes_per_panel must be >= 256")
        if not 0 < self.singular_tol < 1:
            raise ValueError("singular_tol must lie in (0, 1)")


def initial_state(spec: WavepacketSpec, xs) -> ComplexField:
    """psi0(x) = (sigma0 sqrt(pi))^(-1/2) exp[(-1 + i gamma) x^2 / (2 sigma0^2)]."""
    xs = np.asarray(xs, dtype=float)
    s0 = spec.sigma0
    values = (s0 * math.sqrt(math.pi)) ** -0.5 * np.exp((-1 + 1j * spec.gamma) * xs * xs / (2 * s0 * s0))
    return ComplexField(xs, values, 0.0)


def _kernel_factors(spec: WavepacketSpec, t: float, tol: float):
    theta = spec.omega * t
    s = math.sin(theta)
    if abs(s) <= tol:
        raise KernelSingular(f"sin(omega t) = {s:.3g} at t = {t} (focal time)")
    m_over_hbar = spec.units.mass / spec.units.hbar
    # one -pi/2 Maslov step per focal instant crossed; on (0, pi) this is the
    # principal root of m omega / (2 pi i hbar sin)
    crossings = math.floor(theta / math.pi)
    prefactor = math.sqrt(m_over_hbar * spec.omega / (2 * math.pi * abs(s))) * np.exp(
        -1j * (math.pi / 4 + crossings * math.pi / 2)
    )
    return prefactor, m_over_hbar * spec.omega / (2 * s), math.cos(theta)


def kernel(spec: WavepacketSpec, x, xp, t: float):
    """Harmonic-oscillator propagator G(x, t; x', 0).

    Complex ``x``/``xp`` are accepted (useful for contour-rotated quadrature).
    The prefactor phase follows the evolution continuously through focal
    times, so G(t1) composed with G(t2) equals G(t1 + t2) for any t1, t2 > 0.
    """
    t = float(check_times(t))
    prefactor, a, c = _kernel_factors(spec, t, KERNEL_SINGULAR_TOL)
    x = np.asarray(x)
    xp = np.asarray(xp)
    return prefactor * np.exp(1j * a * (c * (x * x + xp * xp) - 2 * x * xp))


def _gauss_legendre_panels(lo: float, hi: float, panels: int, nodes: int):
    y, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    return (mid[:, None] + half[:, None] * y).ravel(), (half[:, None] * w).ravel()


def _cut_radius(spec: WavepacketSpec, t: float, config: QuadratureConfig) -> float:
    # closed-form width only bounds the window; amplitudes stay independent
    return config.cut_radius_in_widths * max(spec.sigma0, float(width(spec, t)))


def evolve_numeric(
    spec: WavepacketSpec, t: float, xs, config: QuadratureConfig | None = None, *, chunk: int = 512
) -> ComplexField:
    """Propagate the initial state to time ``t`` by kernel quadrature.

    Parameters
    ----------
    xs : array_like
        Output grid; must span at least ``cut_radius_in_widths * max(sigma0, B(t))``
        so the normalisation check is meaningful.

    Raises
    ------
    KernelSingular
        If |sin(omega t)| <= ``config.singular_tol``.
    TruncationTooTight
        If the initial state is not negligible (1e-10 of peak) at the cut.
    NotConverged
        If the trapezoid norm of the result deviates from 1 by more than 1e-6.
    """
    config = config or QuadratureConfig()
    t = float(check_times(t))
    xs = np.asarray(xs, dtype=float)
    prefactor, a, c = _kernel_factors(spec, t, config.singular_tol)

    big_l = _cut_radius(spec, t, config)
    if xs.size < 2 or xs[-1] - xs[0] < big_l:
        raise ValueError(f"output grid must span at least {big_l:.6g}")
    s0 = spec.sigma0
    edge = math.exp(-big_l * big_l / (2 * s0 * s0))
    if edge > 1e-10:
        raise TruncationTooTight(f"integrand at the cut is {edge:.3g} of its peak")

    xq, wq = _gauss_legendre_panels(-big_l, big_l, config.panels, config.nodes_per_panel)
    psi0 = initial_state(spec, xq).values
    # x'-only factors go into the weights, the x-only chirp comes out of the sum
    weighted = wq * psi0 * np.exp(1j * a * c * xq * xq)
    out = np.empty(xs.size, dtype=complex)
    for start in range(0, xs.size, chunk):
        x = xs[start : start + chunk]
        out[start : start + chunk] = np.exp(-2j * a * np.outer(x, xq)) @ weighted
    out *= prefactor * np.exp(1j * a * c * xs * xs)

    result = ComplexField(xs, out, t)
    drift = abs(result.norm() - 1.0)
    if drift > 1e-6:
        raise NotConverged(f"propagated norm deviates from 1 by {drift:.3g}")
    return result


@dataclass(frozen=True)
class GaussianFit:
    width_B: float
    inv_curvature_u: float
    gouy_principal: float
    residual: float

    def __iter__(self):
        return iter((self.width_B, self.inv_curvature_u, self.gouy_principal))


def fit_gaussian_params(
    field: ComplexField,
    units: UnitSystem | None = None,
    *,
    max_residual: float = 1e-6,
    support: float = 1e-10,
) -> GaussianFit:
    """Recover (B, u, principal Gouy phase) from a sampled centred Gaussian.

    B follows from the second moment (<x^2> = B^2/2), u from the quadratic
    coefficient m u / (2 hbar) of the unwrapped phase, and the Gouy phase from
    minus the phase at x = 0, reduced to (-pi/4, pi/4]. Only samples with
    density above ``support`` times the peak enter the fits.

    Raises
    ------
    NotGaussian
        If the weighted RMS residual of a quadratic fit to log|psi| exceeds
        ``max_residual``.
    """
    units = units or UnitSystem()
    xs, psi = field.xs, field.values
    rho = np.abs(psi) ** 2

    second = trapezoid(xs * xs * rho, xs) / trapezoid(rho, xs)
    b_fit = math.sqrt(2 * second)

    keep = rho > support * rho.max()
    idx = np.flatnonzero(keep)
    lo, hi = idx[0], idx[-1] + 1  # contiguous core for phase unwrapping
    x, w = xs[lo:hi], rho[lo:hi]
    design = np.vander(x, 3, increasing=True)
    sw = np.sqrt(w)

    logmag = np.log(np.abs(psi[lo:hi]))
    coef, *_ = np.linalg.lstsq(design * sw[:, None], logmag * sw, rcond=None)
    resid = logmag - design @ coef
    residual = float(math.sqrt(np.sum(w * resid**2) / np.sum(w)))
    if not np.isfinite(residual) or residual > max_residual:
        raise NotGaussian(f"log-magnitude residual {residual:.3g} exceeds {max_residual:.3g}")

    phase = np.unwrap(np.angle(psi[lo:hi]))
    pc, *_ = np.linalg.lstsq(design * sw[:, None], phase * sw, rcond=None)
    u_fit = 2 * units.hbar * pc[2] / units.mass

    mu = (-pc[0]) % (math.pi / 2)
    if mu > math.pi / 4:
        mu -= math.pi / 2
    return GaussianFit(b_fit, float(u_fit), float(mu), residual)


def relative_l2(a: ComplexField, b: ComplexField) -> float:
    """Relative discrete L2 distance ||a - b|| / ||b|| on a shared grid."""
    if a.xs.shape != b.xs.shape or not np.array_equal(a.xs, b.xs):
        raise ValueError("fields must share the same grid")
    return float(np.linalg.norm(a.values - b.values) / np.linalg.norm(b.values))
