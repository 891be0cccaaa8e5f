"""Closed-form evolution of a correlated Gaussian packet in a harmonic trap.

With theta = omega t, k = omega/omega0 and eps = omega0/omega the evolved packet is

    psi(x, t) = (B sqrt(pi))^(-1/2) exp(-x^2 / 2B^2) exp(i m u x^2 / 2 hbar - i mu)

    (B / sigma0)^2 = eps^2 sin^2 theta + (gamma eps sin theta + cos theta)^2
    mu             = 1/2 arctan[sin theta / D],   D = gamma sin theta + k cos theta

and u = 1/R is the inverse curvature (units of 1/time).

All functions broadcast over ``t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import ComplexField, WavepacketSpec, check_times
from .errors import (
    EmptyWindow,
    ExpansionPole,
    NotResonant,
    StepTooLarge,
    UnsupportedOrder,
)

QUARTER_PI = math.pi / 4
HALF_PI = math.pi / 2

#: |cos(omega t)| below this is treated as a pole of the high-frequency series.
EXPANSION_POLE_TOL = 1e-6


@dataclass(frozen=True)
class EvolvedParams:
    t: float
    width_B: float
    inv_curvature_u: float
    gouy_principal: float
    aux_C: float
    gouy: float  # continuous branch, gouy(0) = 0


@dataclass(frozen=True, eq=False)
class GouyTrace:
    times: np.ndarray
    principal: np.ndarray
    unwrapped: np.ndarray
    jump_times: np.ndarray


@dataclass(frozen=True)
class WidthExtremum:
    t: float
    kind: str  # "min" or "max"
    width: float


def _trig(spec: WavepacketSpec, t):
    t = check_times(t)
    theta = spec.omega * t
    return np.sin(theta), np.cos(theta)


def _require_resonance(spec: WavepacketSpec):
    if not spec.is_resonant:
        raise NotResonant(f"omega={spec.omega} differs from omega0={spec.omega0}")


def gouy_denominator(spec: WavepacketSpec, t):
    """D(t) = gamma sin(omega t) + (omega/omega0) cos(omega t)."""
    s, c = _trig(spec, t)
    return spec.gamma * s + (spec.omega / spec.omega0) * c


def aux_C(spec: WavepacketSpec, t):
    """C(t) = sin^2(omega t) + D(t)^2."""
    s, c = _trig(spec, t)
    d = spec.gamma * s + (spec.omega / spec.omega0) * c
    return s * s + d * d


def _width_ratio_sq(spec: WavepacketSpec, s, c):
    eps = spec.omega0 / spec.omega
    return (eps * s) ** 2 + (spec.gamma * eps * s + c) ** 2


def width(spec: WavepacketSpec, t):
    """Packet width B(t); B(0) = sigma0 exactly."""
    s, c = _trig(spec, t)
    return spec.sigma0 * np.sqrt(_width_ratio_sq(spec, s, c))


def inv_curvature(spec: WavepacketSpec, t):
    """Inverse curvature u = 1/R of the quadratic phase front.

    The ratio C sin / (omega C cos - (omega^2/omega0) D) has a removable 0/0 at
    sin(omega t) = 0; it is evaluated here in the cancelled form

        u = omega [omega omega0 gamma cos 2theta + (omega0^2 (1 + gamma^2) - omega^2) sin cos]
            / [omega0^2 sin^2 + (gamma omega0 sin + omega cos)^2]

    which is finite for every t (u(0) = gamma omega0, the imprinted chirp).
    """
    s, c = _trig(spec, t)
    w, w0, g = spec.omega, spec.omega0, spec.gamma
    # (w0 - w)(w0 + w) keeps the resonant coefficient exactly w0^2 g^2
    chirp = w0 * w0 * g * g + (w0 - w) * (w0 + w)
    num = w * (w * w0 * g * (c * c - s * s) + chirp * s * c)
    den = (w0 * s) ** 2 + (g * w0 * s + w * c) ** 2
    return num / den


def gouy_principal(spec: WavepacketSpec, t):
    """Principal-branch Gouy phase in (-pi/4, pi/4].

    Where D = 0 the limit reached while the phase is still increasing, +pi/4,
    is returned.
    """
    s, c = _trig(spec, t)
    d = spec.gamma * s + (spec.omega / spec.omega0) * c
    with np.errstate(divide="ignore", invalid="ignore"):
        mu = 0.5 * np.arctan(s / d)
    return np.where(d == 0.0, QUARTER_PI, mu)


def gouy_phase(spec: WavepacketSpec, t):
    """Continuous Gouy phase with gouy_phase(0) = 0.

    Counts whole half-periods of omega t and resolves the rest with atan2, so it
    is exact for any t and needs no sampling.
    """
    t = check_times(t)
    theta = spec.omega * t
    m = np.floor(theta / math.pi)
    r = theta - m * math.pi
    sr, cr = np.sin(r), np.cos(r)
    return 0.5 * (m * math.pi + np.arctan2(sr, spec.gamma * sr + (spec.omega / spec.omega0) * cr))


def max_gouy_step(spec: WavepacketSpec) -> float:
    """Largest sampling step accepted by :func:`gouy_unwrapped`."""
    return math.pi / (8.0 * spec.omega)


def gouy_unwrapped(spec: WavepacketSpec, times) -> GouyTrace:
    """Unwrap the principal Gouy phase along ascending sample times.

    The phase grows monotonically, so each zero crossing of D between two
    samples adds +pi/2. The first sample is anchored on the continuous branch
    (phase 0 at t = 0).

    Raises
    ------
    StepTooLarge
        If two consecutive samples are further apart than pi/(8 omega).
    """
    times = check_times(times)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a non-empty 1-D sequence")
    steps = np.diff(times)
    if np.any(steps <= 0):
        raise ValueError("times must be strictly ascending")
    limit = max_gouy_step(spec)
    if np.any(steps > limit * (1 + 1e-12)):
        raise StepTooLarge(f"max step {steps.max():.6g} exceeds pi/(8 omega) = {limit:.6g}")

    s, c = _trig(spec, times)
    k = spec.omega / spec.omega0
    d = spec.gamma * s + k * c
    principal = gouy_principal(spec, times)

    # a sample sitting exactly on D = 0 still belongs to the branch before the jump
    side = np.sign(d)
    on_zero = d == 0.0
    side[on_zero] = -np.sign(spec.gamma * c - k * s)[on_zero]
    events = side[1:] != side[:-1]

    k0 = np.rint((gouy_phase(spec, times[0]) - principal[0]) / HALF_PI)
    branch = k0 + np.concatenate(([0], np.cumsum(events)))
    unwrapped = principal + HALF_PI * branch
    return GouyTrace(times, principal, unwrapped, times[1:][events])


def gouy_rate(spec: WavepacketSpec, t):
    """d(mu)/dt = omega0 / (2 (B/sigma0)^2)."""
    s, c = _trig(spec, t)
    return spec.omega0 / (2.0 * _width_ratio_sq(spec, s, c))


def evolved_params(spec: WavepacketSpec, t: float) -> EvolvedParams:
    t = float(check_times(t))
    return EvolvedParams(
        t=t,
        width_B=float(width(spec, t)),
        inv_curvature_u=float(inv_curvature(spec, t)),
        gouy_principal=float(gouy_principal(spec, t)),
        aux_C=float(aux_C(spec, t)),
        gouy=float(gouy_phase(spec, t)),
    )


def resonance_params(spec: WavepacketSpec, t: float) -> EvolvedParams:
    """Closed forms specialised to omega = omega0."""
    _require_resonance(spec)
    t = float(check_times(t))
    w, g = spec.omega, spec.gamma
    s, c = math.sin(w * t), math.cos(w * t)
    d = g * s + c
    cc = s * s + d * d
    mu = QUARTER_PI if d == 0.0 else 0.5 * math.atan(s / d)
    return EvolvedParams(
        t=t,
        width_B=spec.sigma0 * math.sqrt(cc),
        inv_curvature_u=w * g * ((c * c - s * s) + g * s * c) / cc,
        gouy_principal=mu,
        aux_C=cc,
        gouy=float(gouy_phase(spec, t)),
    )


def wavefunction(spec: WavepacketSpec, t: float, xs) -> ComplexField:
    """Sample the closed-form evolved state on ``xs``.

    Uses the continuous Gouy phase, which carries the correct global phase
    past focal times.
    """
    t = float(check_times(t))
    xs = np.asarray(xs, dtype=float)
    b = float(width(spec, t))
    u = float(inv_curvature(spec, t))
    mu = float(gouy_phase(spec, t))
    m_over_hbar = spec.units.mass / spec.units.hbar
    values = (b * math.sqrt(math.pi)) ** -0.5 * np.exp(
        -xs * xs / (2 * b * b) + 1j * (0.5 * m_over_hbar * u * xs * xs - mu)
    )
    return ComplexField(xs, values, t)


# --- asymptotic forms ------------------------------------------------------


def expand_low_frequency(spec: WavepacketSpec, t, order: int = 2):
    """Series in omega for omega << omega0 (order 0: free evolution)."""
    if order not in (0, 2):
        raise UnsupportedOrder(f"low-frequency order must be 0 or 2, got {order}")
    t = check_times(t)
    w0, g, w = spec.omega0, spec.gamma, spec.omega
    a = w0 * t
    q = 1 + 2 * g * a + (1 + g * g) * a * a
    b = spec.sigma0 * np.sqrt(q)
    den = 1 + g * a
    with np.errstate(divide="ignore", invalid="ignore"):
        mu = np.where(den == 0.0, QUARTER_PI, 0.5 * np.arctan(a / den))
    if order == 2:
        b = b - spec.sigma0 * (3 + 4 * g * a + (1 + g * g) * a * a) * t * t / (6 * np.sqrt(q)) * w * w
        mu = mu + w0 * t**3 / (6 + 12 * g * a + 6 * a * a * (1 + g * g)) * w * w
    return b, mu


def expand_high_frequency(spec: WavepacketSpec, t, b_order: int = 1, mu_order: int = 4):
    """Series in omega0/omega for omega >> omega0.

    ``b_order`` counts powers of 1/omega kept in B (0 or 1); ``mu_order`` is
    the highest power of omega0/omega kept in the Gouy phase (1 to 4).
    """
    if b_order not in (0, 1):
        raise UnsupportedOrder(f"B order must be 0 or 1, got {b_order}")
    if mu_order not in (1, 2, 3, 4):
        raise UnsupportedOrder(f"Gouy order must be in 1..4, got {mu_order}")
    s, c = _trig(spec, t)
    if np.any(np.abs(c) <= EXPANSION_POLE_TOL):
        raise ExpansionPole("cos(omega t) too close to zero for the high-frequency series")
    g, eps = spec.gamma, spec.omega0 / spec.omega
    b = spec.sigma0 * np.abs(c)
    if b_order == 1:
        b = b + spec.sigma0 * g * spec.omega0 * np.sign(c) * s / spec.omega
    tn = s / c
    terms = (
        tn / 2 * eps,
        -g * tn**2 / 2 * eps**2,
        (3 * g * g - 1) * tn**3 / 6 * eps**3,
        (g - g**3) * tn**4 / 2 * eps**4,
    )
    mu = sum(terms[:mu_order])
    return b, mu


def expand_weak_correlation(spec: WavepacketSpec, t):
    """First order in gamma at resonance; the Gouy phase is the continuous branch."""
    _require_resonance(spec)
    s, c = _trig(spec, t)
    theta = spec.omega * check_times(t)
    mu = theta / 2 - 0.5 * s * s * spec.gamma
    b = spec.sigma0 * (1 + 0.5 * (2 * s * c) * spec.gamma)
    return b, mu


# --- width extrema -----------------------------------------------------------


def _width_slope(spec: WavepacketSpec, t):
    # d/dtheta of (B/sigma0)^2
    s, c = _trig(spec, t)
    eps, g = spec.omega0 / spec.omega, spec.gamma
    return 2 * eps * eps * s * c + 2 * (g * eps * s + c) * (g * eps * c - s)


def find_width_extrema(spec: WavepacketSpec, t_lo: float, t_hi: float) -> list[WidthExtremum]:
    """Local minima and maxima of B(t) strictly inside [t_lo, t_hi].

    A scan of step pi/(50 omega) brackets sign changes of dB^2/dt, which are
    then solved to ~1e-13 in t. Constant-width packets give an empty list.
    """
    t_lo, t_hi = (float(v) for v in check_times([t_lo, t_hi]))
    if not t_lo < t_hi:
        raise EmptyWindow(f"need t_lo < t_hi, got [{t_lo}, {t_hi}]")
    n = max(2, int(math.ceil((t_hi - t_lo) / (math.pi / (50 * spec.omega)))) + 1)
    grid = np.linspace(t_lo, t_hi, n)
    slope = _width_slope(spec, grid)
    eps = spec.omega0 / spec.omega
    scale = 1 + eps * eps * (1 + spec.gamma**2)
    if np.max(np.abs(slope)) <= 1e-13 * scale:
        return []

    def f(tt):
        return float(_width_slope(spec, tt))

    found = []
    for i in range(n - 1):
        a, b = slope[i], slope[i + 1]
        if a * b < 0:
            ts = brentq(f, grid[i], grid[i + 1], xtol=1e-14, rtol=4 * np.finfo(float).eps)
            found.append((ts, "max" if a > 0 else "min"))
        elif b == 0.0 and 0 < i + 1 < n - 1 and a * slope[i + 2] < 0:
            found.append((grid[i + 1], "max" if a > 0 else "min"))
    return [WidthExtremum(ts, kind, float(width(spec, ts))) for ts, kind in found]
