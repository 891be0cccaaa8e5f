"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line with the measured
numbers, then asserts at the stated tolerance. Criteria 5 and 7 are expected
to fail; see the README.
"""

import math
import time

import numpy as np
import pytest
from scipy.integrate import trapezoid

from gouywave import (
    LikelihoodModel,
    SqueezeParams,
    cfi_gouy_coincidence,
    cfi_numeric,
    evolve_numeric,
    evolved_covariance,
    expand_high_frequency,
    expand_low_frequency,
    expand_weak_correlation,
    find_width_extrema,
    free_covariance,
    gamma_from_squeeze,
    gouy_phase,
    gouy_principal,
    gouy_rate,
    gouy_unwrapped,
    initial_covariance,
    initial_state,
    make_spec,
    qfi_closed_form,
    qfi_general,
    resonant_covariance_family,
    squeezed_covariance,
    wavefunction,
    width,
    wigner_from_wavefunction,
    wigner_gaussian,
)
from gouywave.cli.checks import DEFAULT_TIMES, default_battery, oracle_check
from gouywave.cli.figures import FIGURE_IDS, build_figure, emit_figure

SEED = 20240611


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}: {detail}")
        return ok

    return emit


def _random_specs(rng, n):
    for _ in range(n):
        w0, w = np.exp(rng.uniform(math.log(0.2), math.log(5.0), 2))
        yield make_spec(float(w0), float(w), float(rng.uniform(-3, 3)))


def test_c1_oracle_equivalence(report):
    start = time.perf_counter()
    result = oracle_check(default_battery(), DEFAULT_TIMES)
    elapsed = time.perf_counter() - start
    errors = [e for e in result.data.column("l2_error") if e is not None]
    ok = len(errors) == 36 and max(errors) <= 1e-8 and elapsed < 10.0
    report(1, "oracle equivalence", ok, f"36 cases, max rel L2 {max(errors):.3g} (<= 1e-8), {elapsed:.2f} s (< 10 s)")
    assert ok


def test_c2_gouy_rate_identity(report):
    rng = np.random.default_rng(SEED)
    h = 1e-6
    worst = 0.0
    for spec in _random_specs(rng, 200):
        t = float(rng.uniform(1e-3, 10.0))
        mu = gouy_unwrapped(spec, [t - h, t, t + h]).unwrapped
        fd = (mu[2] - mu[0]) / (2 * h)
        worst = max(worst, abs(float(gouy_rate(spec, t)) - fd) / spec.omega0)
    ok = worst <= 1e-5
    report(2, "Gouy rate identity", ok, f"200 points, max |rate - FD| / omega0 = {worst:.3g} (<= 1e-5)")
    assert ok


def test_c3_quarter_turn_per_period(report):
    rng = np.random.default_rng(SEED + 1)
    worst = 0.0
    for spec in _random_specs(rng, 20):
        t0 = float(rng.uniform(0.0, 10.0))
        times = np.linspace(t0, t0 + math.pi / spec.omega, 2001)
        mu = gouy_unwrapped(spec, times).unwrapped
        worst = max(worst, abs(mu[-1] - mu[0] - math.pi / 2))
    ok = worst <= 1e-9
    report(3, "pi/2 per period", ok, f"20 points, max |dmu - pi/2| = {worst:.3g} (<= 1e-9)")
    assert ok


def test_c4_resonance_stationarity(report):
    spec = make_spec(1.0, 1.0, 0.0)
    t = np.linspace(0.0, 4 * math.pi, 2001)
    db = float(np.max(np.abs(width(spec, t) - spec.sigma0)))
    dmu = float(np.max(np.abs(gouy_unwrapped(spec, t).unwrapped - t / 2)))
    xs = np.linspace(-8, 8, 257)
    rho0 = initial_state(spec, xs).density
    drho = 0.0
    for tk in (0.3, 1.1, 2.6, 4.0, 5.9):
        drho = max(drho, float(np.max(np.abs(evolve_numeric(spec, tk, xs).density - rho0))))
    ok = db <= 1e-12 and dmu <= 1e-9 and drho <= 1e-8
    report(4, "resonance stationarity", ok,
           f"max |B - sigma0| = {db:.3g} (<= 1e-12), max |mu - wt/2| = {dmu:.3g} (<= 1e-9), "
           f"max |rho - rho0| = {drho:.3g} (<= 1e-8)")
    assert ok


def test_c5_fig2_width_maxima(report):
    targets = (5 * math.pi, 15 * math.pi)
    ok, parts = True, []
    for g in (0.0, 1.0):
        spec = make_spec(1.0, 0.1, g)
        maxima = [e.t for e in find_width_extrema(spec, 0.0, 70.0) if e.kind == "max"]
        mu = gouy_phase(spec, np.array(maxima))
        located = len(maxima) == 2 and all(abs(a - b) <= 1e-3 for a, b in zip(maxima, targets))
        quarter = len(maxima) == 2 and abs(mu[1] - mu[0] - math.pi / 2) <= 1e-9
        ok &= located and quarter
        parts.append(f"gamma={g:g}: maxima {', '.join(f'{m:.5f}' for m in maxima)} "
                     f"(target 15.70796, 47.12389 +- 1e-3), dmu - pi/2 = {mu[1] - mu[0] - math.pi / 2:.2g}")
    report(5, "fig2 width maxima", ok, "; ".join(parts))
    assert ok


_PERIOD = np.linspace(0.0, 2 * math.pi, 201)[1:]
_GAMMAS = (0.5, 1.0, 2.0, 3.0)


def test_c6_qfi_closed_form(report):
    exact = qfi_closed_form(make_spec(1.0, 1.0, 1.0), 2.0) == 10.0
    worst = 0.0
    for g in _GAMMAS:
        spec = make_spec(1.0, 1.0, g)
        for t in _PERIOD:
            ref = float(qfi_closed_form(spec, t))
            worst = max(worst, abs(qfi_general(resonant_covariance_family(g, t), None, 1.0) - ref) / ref)
    ok = exact and worst <= 1e-6
    report(6, "QFI closed form", ok, f"qfi_closed(1, 2) == 10: {exact}; 800 points, max rel dev {worst:.3g} (<= 1e-6)")
    assert ok


def test_c7_information_inequality_and_coincidence(report):
    excess = -math.inf
    for g in _GAMMAS:
        spec = make_spec(1.0, 1.0, g)
        for t in _PERIOD:
            cfi = cfi_numeric(LikelihoodModel(spec, t))
            qfi = qfi_general(resonant_covariance_family(g, t), None, 1.0)
            excess = max(excess, cfi / qfi - 1)
    ok = excess <= 1e-6
    parts = [f"max CFI/QFI - 1 = {excess:.3g} (<= 1e-6)"]
    for g in (1.0, 3.0):
        c = cfi_gouy_coincidence(make_spec(1.0, 1.0, g))
        ok &= c.separation_ok and c.ratio_ok
        parts.append(f"gamma={g:g}: t_cfi_max {c.t_cfi_max:.5f}, sign change {c.t_mu_signchange:.5f}, "
                     f"separation {c.separation:.3f} (<= 0.1), peak ratio {c.ratio_max_cfi_over_qfi:.4f} (>= 0.95)")
    report(7, "information inequality and coincidence", ok, "; ".join(parts))
    assert ok


def test_c8_covariance_and_wigner(report):
    rng = np.random.default_rng(SEED + 8)
    states = [initial_covariance(g) for g in np.linspace(-5, 5, 41)]
    states += [free_covariance(a) for a in np.linspace(-20, 20, 41)]
    squeezes = [SqueezeParams(float(r), float(p)) for r, p in zip(rng.uniform(0, 2, 40), rng.uniform(-math.pi, math.pi, 40))]
    states += [squeezed_covariance(s) for s in squeezes]
    states += [evolved_covariance(make_spec(w, w, g), t)
               for w in (0.5, 1.0, 3.0) for g in (-2.0, 0.0, 0.7) for t in np.linspace(0, 7, 15)]
    ddet = max(abs(s.det - 0.25) for s in states)

    dmap = max(abs(squeezed_covariance(s).sxp - initial_covariance(gamma_from_squeeze(s)).sxp) for s in squeezes)

    axis = np.linspace(-6, 6, 401)
    xx, pp = np.meshgrid(axis, axis, indexing="ij")
    dnorm = 0.0
    for cov in (initial_covariance(-1), initial_covariance(0), initial_covariance(1), evolved_covariance(make_spec(1, 1, 1), 0.9)):
        dnorm = max(dnorm, abs(trapezoid(trapezoid(wigner_gaussian(cov, xx, pp), axis, axis=1), axis) - 1))

    dwig = 0.0
    probes_p = np.linspace(-2, 2, 21)
    for g in (-1.0, 0.0, 1.0):
        f = initial_state(make_spec(1, 1, g), np.linspace(-10, 10, 801))
        cov = initial_covariance(g)
        dwig = max(dwig, max(abs(wigner_from_wavefunction(f, x, p) - wigner_gaussian(cov, x, p))
                             for x in probes_p for p in probes_p))
    spec, t = make_spec(1, 1, 1), 0.9
    half = 8 * max(1.0, float(width(spec, t)))
    xs = np.linspace(-half, half, 801)
    field = wavefunction(spec, t, xs)
    step = xs[1] - xs[0]
    probes_x = [k * step / 2 for k in range(-60, 61, 6)]
    cov = evolved_covariance(spec, t)
    dwig = max(dwig, max(abs(wigner_from_wavefunction(field, x, p) - wigner_gaussian(cov, x, p))
                         for x in probes_x for p in probes_p))

    ok = ddet <= 1e-12 and dmap <= 1e-12 and dnorm <= 1e-6 and dwig <= 1e-6
    report(8, "covariance and Wigner suite", ok,
           f"{len(states)} states, max |det - 1/4| = {ddet:.3g} (<= 1e-12); squeeze map {dmap:.3g} (<= 1e-12); "
           f"Wigner norm {dnorm:.3g} (<= 1e-6); integral vs Gaussian {dwig:.3g} (<= 1e-6)")
    assert ok


def _ratios(residuals):
    return [a / b for a, b in zip(residuals, residuals[1:])]


def test_c9_asymptotic_orders(report):
    low = []
    for q in (0, 1):
        res = []
        for w in (0.04, 0.02, 0.01):
            spec = make_spec(1.0, w, 0.8)
            exact = (float(width(spec, 1.3)), float(gouy_phase(spec, 1.3)))
            res.append(abs(exact[q] - expand_low_frequency(spec, 1.3, 2)[q]))
        low += _ratios(res)

    # order n in omega0/omega: halving the small parameter divides the residual by 2^(n+1)
    high = []
    for k in (1, 2, 3, 4):
        res = []
        for w in (20.0, 40.0, 80.0):
            spec = make_spec(1.0, w, 0.7)
            t = 0.4 / w
            res.append(abs(float(gouy_principal(spec, t)) - expand_high_frequency(spec, t, mu_order=k)[1]))
        high += [r / 2 ** (k + 1) for r in _ratios(res)]
    for b in (0, 1):
        res = []
        for w in (20.0, 40.0, 80.0):
            spec = make_spec(1.0, w, 0.7)
            t = 0.4 / w
            res.append(abs(float(width(spec, t)) - expand_high_frequency(spec, t, b_order=b)[0]))
        high += [r / 2 ** (b + 1) for r in _ratios(res)]

    weak = []
    t = np.linspace(0.1, 3.0, 30)
    res = []
    for g in (0.1, 0.05, 0.025):
        spec = make_spec(1, 1, g)
        b, mu = expand_weak_correlation(spec, t)
        res.append((np.max(np.abs(width(spec, t) - b)), np.max(np.abs(gouy_phase(spec, t) - mu))))
    weak = _ratios([r[0] for r in res]) + _ratios([r[1] for r in res])

    ok = (all(8 <= r <= 32 for r in low) and all(0.5 <= r <= 2 for r in high) and all(3 <= r <= 5 for r in weak))
    report(9, "asymptotic orders", ok,
           f"low-frequency ratios {min(low):.2f}..{max(low):.2f} (in [8, 32]); "
           f"high-frequency ratio / expected {min(high):.2f}..{max(high):.2f} (in [0.5, 2]); "
           f"weak-correlation ratios {min(weak):.2f}..{max(weak):.2f} (in [3, 5])")
    assert ok


def test_c10_cli_determinism(report, tmp_path):
    identical, slowest = True, 0.0
    for fig_id in FIGURE_IDS:
        start = time.perf_counter()
        first = emit_figure(fig_id, tmp_path / "a")
        slowest = max(slowest, time.perf_counter() - start)
        second = emit_figure(fig_id, tmp_path / "b")
        for p, q in zip(first, second):
            with open(p, "rb") as fa, open(q, "rb") as fb:
                identical &= fa.read() == fb.read()
    data = build_figure("fig3")["fig3b"]
    sigma0 = 1.0
    min_b = min(r[2] for r in data.rows if r[0] == 0.0) / sigma0
    ok = identical and abs(min_b - 0.1) <= 1e-9
    report(10, "CLI determinism", ok,
           f"{len(FIGURE_IDS)} recipes byte-identical: {identical} (slowest {slowest:.1f} s); "
           f"fig3 min B / sigma0 = {min_b:.12f} (0.1 +- 1e-9)")
    assert ok
