"""Fisher information for estimating the trap frequency omega at resonance.

Everything is differentiated at fixed t along the resonant family
omega' = omega0' with sigma0 held fixed, so omega enters only through omega t
and d/d(omega) = t d/d(omega t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

from .core import WavepacketSpec, check_times, make_spec
from .errors import (
    LengthMismatch,
    NonPositiveProbability,
    NotConverged,
    NotResonant,
    PurityDivergence,
    StepTooSmall,
    ZeroInformation,
)
from .phase_space import CovarianceState, evolved_covariance, purity

#: Relative step of the central differences in omega.
DEFAULT_REL_STEP = 1e-5
#: Steps at or below this fraction of omega are round-off dominated.
MIN_REL_STEP = 1e-9
#: Purity above this makes the purity term of the Gaussian QFI singular.
PURITY_CEILING = 1 - 1e-9
#: Relative disagreement between closed and numeric CFI that gets reported.
CFI_MISMATCH_RTOL = 1e-4


def _require_resonance(spec: WavepacketSpec):
    if not spec.is_resonant:
        raise NotResonant(f"omega={spec.omega} differs from omega0={spec.omega0}")


def _step(omega: float, h) -> float:
    h = DEFAULT_REL_STEP * omega if h is None else float(h)
    if not h > MIN_REL_STEP * omega:
        raise StepTooSmall(f"h_omega = {h:.3g} is below {MIN_REL_STEP:g} * omega")
    return h


@dataclass(frozen=True)
class LikelihoodModel:
    """Position-measurement likelihood P(x|omega) = exp(-x^2/B^2) / (B sqrt(pi))."""

    spec: WavepacketSpec
    t: float

    def __post_init__(self):
        _require_resonance(self.spec)
        object.__setattr__(self, "t", float(check_times(self.t)))

    def width(self, omega: float | None = None) -> float:
        """B at trial frequency ``omega`` (defaults to the true one)."""
        omega = self.spec.omega if omega is None else omega
        th = omega * self.t
        s, c = math.sin(th), math.cos(th)
        return self.spec.sigma0 * math.sqrt(s * s + (self.spec.gamma * s + c) ** 2)

    def density(self, x, omega: float | None = None):
        b = self.width(omega)
        x = np.asarray(x, dtype=float)
        return np.exp(-(x * x) / (b * b)) / (b * math.sqrt(math.pi))


def cfi_closed_form(spec: WavepacketSpec, t):
    """Classical Fisher information of a position measurement, closed form.

    F_C = t^2 gamma^2 (2 cos 2wt + gamma sin 2wt)^2
          / (8 sqrt(2) C^(9/2) [1 / (2 + gamma^2 - gamma^2 cos 2wt + 2 gamma sin 2wt)]^(5/2))
    """
    _require_resonance(spec)
    t = check_times(t)
    g, th = spec.gamma, spec.omega * t
    s, c = np.sin(th), np.cos(th)
    cc = s * s + (c + g * s) ** 2
    inner = 1.0 / (2 + g * g - g * g * np.cos(2 * th) + 2 * g * np.sin(2 * th))
    num = t * t * g * g * (2 * np.cos(2 * th) + g * np.sin(2 * th)) ** 2
    return num / (8 * math.sqrt(2) * cc**4.5 * inner**2.5)


def _cfi_quadrature(model: LikelihoodModel, h: float, panels: int, nodes: int) -> float:
    b = model.width()
    y, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(-12 * b, 12 * b, panels + 1)
    half = 0.5 * np.diff(edges)
    x = ((edges[:-1] + edges[1:])[:, None] / 2 + half[:, None] * y).ravel()
    wq = (half[:, None] * w).ravel()
    omega = model.spec.omega
    p0 = model.density(x)
    # five-point central stencil, O(h^4)
    dp = (
        8 * (model.density(x, omega + h) - model.density(x, omega - h))
        - (model.density(x, omega + 2 * h) - model.density(x, omega - 2 * h))
    ) / (12 * h)
    return float(np.sum(wq * dp * dp / p0))


def cfi_numeric(model: LikelihoodModel, h_omega: float | None = None, *, max_doublings: int = 6) -> float:
    """Classical Fisher information from its integral definition.

    Integrates (dP/domega)^2 / P over [-12B, 12B] by composite Gauss-Legendre,
    with dP/domega from a five-point central difference. The node count is
    doubled until two estimates agree to 1e-8 relative (or to the round-off
    floor ~ (eps/h)^2 when the information vanishes).

    Raises
    ------
    StepTooSmall
        If ``h_omega`` <= 1e-9 omega.
    NotConverged
        If node doubling does not settle within ``max_doublings`` rounds.
    """
    h = _step(model.spec.omega, h_omega)
    floor = 1e4 * (np.finfo(float).eps / h) ** 2
    panels = 8
    prev = _cfi_quadrature(model, h, panels, 32)
    for _ in range(max_doublings):
        panels *= 2
        cur = _cfi_quadrature(model, h, panels, 32)
        if abs(cur - prev) <= 1e-8 * abs(cur) + floor:
            return cur
        prev = cur
    raise NotConverged(f"CFI quadrature still moving by {abs(cur - prev):.3g} after node doubling")


def qfi_closed_form(spec: WavepacketSpec, t):
    """F_Q = t^2 gamma^2 (4 + gamma^2) / 2."""
    _require_resonance(spec)
    t = check_times(t)
    g = spec.gamma
    return 0.5 * t * t * g * g * (4 + g * g)


def resonant_covariance_family(gamma: float, t: float) -> Callable[[float], CovarianceState]:
    """omega -> evolved covariance at resonance, for :func:`qfi_general`."""
    return lambda omega: evolved_covariance(make_spec(omega, omega, gamma), t)


def qfi_general(
    cov_fn: Callable[[float], CovarianceState],
    d_fn: Callable[[float], np.ndarray] | None,
    omega: float,
    h_omega: float | None = None,
    *,
    purity_term: bool | None = None,
) -> float:
    """Quantum Fisher information of a single-mode Gaussian family.

        Tr[(S^-1 dS)^2] / (2 (1 + mu^2)) + 2 (dmu)^2 / (1 - mu^4) + 2 dd^T S^-1 dd

    with mu = 1/(2 sqrt(det S)) the purity and derivatives by central
    differences in omega. ``d_fn`` defaults to the displacement carried by the
    covariance states. ``purity_term=None`` keeps the middle term only for mixed
    states (it is 0/0 for pure ones).

    Raises
    ------
    PurityDivergence
        If ``purity_term`` is True and the state is (numerically) pure.
    """
    h = _step(omega, h_omega)
    lo, mid, hi = cov_fn(omega - h), cov_fn(omega), cov_fn(omega + h)
    inv = mid.inverse
    dsig = (hi.matrix - lo.matrix) / (2 * h)
    a = inv @ dsig
    mu = purity(mid)
    total = float(np.trace(a @ a)) / (2 * (1 + mu * mu))

    if purity_term is None:
        purity_term = mu <= PURITY_CEILING
    if purity_term:
        if mu > PURITY_CEILING:
            raise PurityDivergence(f"purity {mu!r} makes the purity term singular")
        dmu = (purity(hi) - purity(lo)) / (2 * h)
        total += 2 * dmu * dmu / (1 - mu**4)

    if d_fn is None:
        dd = (np.asarray(hi.d) - np.asarray(lo.d)) / (2 * h)
    else:
        dd = (np.asarray(d_fn(omega + h), dtype=float) - np.asarray(d_fn(omega - h), dtype=float)) / (2 * h)
    total += 2 * float(dd @ inv @ dd)
    return total


@dataclass(frozen=True)
class FisherReport:
    t: float
    gamma: float
    omega: float
    cfi_closed: float
    cfi_numeric: float
    qfi_closed: float
    qfi_general: float
    crlb_single_shot: float  # 1/sqrt(qfi_general), inf without information
    diagnostics: tuple[str, ...] = ()


def fisher_report(spec: WavepacketSpec, t: float, h_omega: float | None = None) -> FisherReport:
    """Closed-form and numeric Fisher information side by side.

    ``diagnostics`` may contain ``cfi_closed_mismatch`` (relative gap above
    1e-4), ``information_inequality`` (CFI above QFI) and ``zero_information``.
    """
    _require_resonance(spec)
    t = float(check_times(t))
    cc = float(cfi_closed_form(spec, t))
    cn = cfi_numeric(LikelihoodModel(spec, t), h_omega)
    qc = float(qfi_closed_form(spec, t))
    qg = qfi_general(resonant_covariance_family(spec.gamma, t), None, spec.omega, h_omega)

    # finite differences cannot resolve information below ~ (eps/h)^2
    floor = 1e4 * (np.finfo(float).eps / _step(spec.omega, h_omega)) ** 2
    flags = []
    if abs(cc - cn) > CFI_MISMATCH_RTOL * max(cn, 1e-6 * qg) + floor:
        flags.append("cfi_closed_mismatch")
    if cn > qg * (1 + 1e-6) + floor:
        flags.append("information_inequality")
    zero = qg <= floor
    if zero:
        flags.append("zero_information")
    bound = math.inf if zero else 1 / math.sqrt(qg)
    return FisherReport(t, spec.gamma, spec.omega, cc, cn, qc, qg, bound, tuple(flags))


@dataclass(frozen=True)
class CrlbBounds:
    cfi: float
    qfi: float


def crlb(fisher, n_repetitions: int = 1):
    """Cramer-Rao bound 1/sqrt(n F) on the standard deviation of omega.

    ``fisher`` is either a number or a :class:`FisherReport`; a report gives
    both the CFI-based and the QFI-based bound (the CFI bound is inf where only
    the CFI vanishes).

    Raises
    ------
    ZeroInformation
        If the (quantum) Fisher information is zero.
    """
    if int(n_repetitions) != n_repetitions or n_repetitions < 1:
        raise ValueError(f"n_repetitions must be a positive integer, got {n_repetitions}")
    if isinstance(fisher, FisherReport):
        if "zero_information" in fisher.diagnostics or fisher.qfi_general <= 0:
            raise ZeroInformation("the state carries no information about omega")
        cfi = fisher.cfi_numeric
        return CrlbBounds(
            1 / math.sqrt(n_repetitions * cfi) if cfi > 0 else math.inf,
            1 / math.sqrt(n_repetitions * fisher.qfi_general),
        )
    f = float(fisher)
    if not f > 0:
        raise ZeroInformation("the Fisher information is zero")
    return 1 / math.sqrt(n_repetitions * f)


@dataclass(frozen=True)
class Coincidence:
    """CFI peak against the nearest sign change of the principal Gouy phase."""

    t_cfi_max: float
    t_mu_signchange: float
    ratio_max_cfi_over_qfi: float
    omega: float
    max_separation: float = 0.1
    min_ratio: float = 0.95
    diagnostics: tuple[str, ...] = ()

    def __iter__(self):
        return iter((self.t_cfi_max, self.t_mu_signchange, self.ratio_max_cfi_over_qfi))

    @property
    def separation(self) -> float:
        return abs(self.t_cfi_max - self.t_mu_signchange)

    @property
    def separation_ok(self) -> bool:
        return self.separation <= self.max_separation / self.omega

    @property
    def ratio_ok(self) -> bool:
        return self.ratio_max_cfi_over_qfi >= self.min_ratio


def gouy_sign_changes(spec: WavepacketSpec, t_lo: float, t_hi: float) -> np.ndarray:
    """Times in [t_lo, t_hi] where the principal Gouy phase changes sign.

    These are the zeros of sin(omega t) (continuous crossings) and of
    D = gamma sin + (omega/omega0) cos (jumps from +pi/4 to -pi/4).
    """
    w = spec.omega
    shift = math.atan2(w / spec.omega0, spec.gamma)  # D is proportional to sin(wt + shift)
    out = []
    for offset in (0.0, -shift):
        n_lo = math.ceil((w * t_lo - offset) / math.pi)
        n_hi = math.floor((w * t_hi - offset) / math.pi)
        out.extend((offset + n * math.pi) / w for n in range(n_lo, n_hi + 1))
    return np.unique(np.array(out, dtype=float))


def cfi_gouy_coincidence(
    spec: WavepacketSpec,
    period_window: tuple[float, float] | None = None,
    *,
    samples: int = 401,
    max_separation: float = 0.1,
    min_ratio: float = 0.95,
) -> Coincidence:
    """Locate the CFI maximum and the nearest principal-Gouy sign change.

    The window defaults to one period [0, pi/omega]. The maximum is bracketed
    on a ``samples``-point scan of :func:`cfi_numeric` and refined with a
    bounded scalar search. ``max_separation`` (in units of 1/omega) and
    ``min_ratio`` are the thresholds exposed by :attr:`Coincidence.separation_ok`
    and :attr:`Coincidence.ratio_ok`.
    """
    _require_resonance(spec)
    w = spec.omega
    t_lo, t_hi = period_window if period_window is not None else (0.0, math.pi / w)
    if t_hi - t_lo < math.pi / w * (1 - 1e-12):
        raise ValueError("period_window must cover at least one period pi/omega")
    if spec.gamma == 0:
        return Coincidence(math.nan, math.nan, 0.0, w, max_separation, min_ratio, ("zero_information",))

    def cfi(t):
        return cfi_numeric(LikelihoodModel(spec, t))

    grid = np.linspace(t_lo, t_hi, samples)
    values = np.array([cfi(t) for t in grid])
    i = int(np.argmax(values))
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, samples - 1)]
    res = minimize_scalar(lambda t: -cfi(t), bounds=(a, b), method="bounded", options={"xatol": 1e-10})
    t_star = float(res.x) if -res.fun >= values[i] else float(grid[i])

    roots = gouy_sign_changes(spec, t_lo, t_hi)
    t_sign = float(roots[np.argmin(np.abs(roots - t_star))]) if roots.size else math.nan
    ratio = cfi(t_star) / float(qfi_closed_form(spec, t_star))
    return Coincidence(t_star, t_sign, ratio, w, max_separation, min_ratio)


def discrete_cfi(probs, dprobs) -> float:
    """F = sum_i (dP_i)^2 / P_i over a finite outcome set."""
    probs = np.asarray(probs, dtype=float)
    dprobs = np.asarray(dprobs, dtype=float)
    if probs.shape != dprobs.shape:
        raise LengthMismatch(f"{probs.shape} probabilities vs {dprobs.shape} derivatives")
    if np.any(~(probs > 0)):
        raise NonPositiveProbability("every outcome probability must be > 0")
    return float(np.sum(dprobs * dprobs / probs))


__all__ = [
    "Coincidence",
    "CrlbBounds",
    "FisherReport",
    "LikelihoodModel",
    "cfi_closed_form",
    "cfi_gouy_coincidence",
    "cfi_numeric",
    "crlb",
    "discrete_cfi",
    "fisher_report",
    "gouy_sign_changes",
    "qfi_closed_form",
    "qfi_general",
    "resonant_covariance_family",
]
