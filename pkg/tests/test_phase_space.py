import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import trapezoid

from gouywave import (
    CovarianceState,
    SqueezeParams,
    evolve_numeric,
    evolved_covariance,
    free_covariance,
    gamma_from_squeeze,
    initial_covariance,
    initial_state,
    make_spec,
    purity,
    squeezed_covariance,
    wigner_from_wavefunction,
    wigner_gaussian,
    width,
)
from gouywave.errors import GridTooCoarse, NotPositiveDefinite, NotResonant, UncertaintyViolation

gammas = st.floats(-5, 5)
squeezes = st.builds(SqueezeParams, st.floats(0, 2), st.floats(-10, 10))


def test_initial_covariance_examples():
    assert initial_covariance(0).matrix.tolist() == [[0.5, 0.0], [0.0, 0.5]]
    assert initial_covariance(1).matrix.tolist() == [[0.5, 0.5], [0.5, 1.0]]


def test_squeezed_examples():
    assert squeezed_covariance(SqueezeParams(0, 1.3)).matrix == pytest.approx(0.5 * np.eye(2))
    c = squeezed_covariance(SqueezeParams(0.5, 0.0))
    assert (c.sxx, c.sxp, c.spp) == pytest.approx((math.exp(-1) / 2, 0.0, math.exp(1) / 2))
    assert squeezed_covariance(SqueezeParams(0.3, math.pi / 2)).sxp == pytest.approx(-0.5 * math.sinh(0.6))


def test_gamma_from_squeeze_examples():
    assert gamma_from_squeeze(SqueezeParams(1.7, 0.0)) == 0.0
    assert gamma_from_squeeze(SqueezeParams(0.5, -math.pi / 2)) == pytest.approx(1.1752011936, abs=1e-10)


def test_squeeze_params_validation():
    assert SqueezeParams(0.1, -math.pi).phi == math.pi
    assert SqueezeParams(0.1, 3 * math.pi / 2).phi == pytest.approx(-math.pi / 2)
    with pytest.raises(ValueError):
        SqueezeParams(-0.1, 0)


@given(squeezes)
def test_squeeze_off_diagonal_consistency(params):
    g = gamma_from_squeeze(params)
    assert abs(initial_covariance(g).sxp - squeezed_covariance(params).sxp) <= 1e-12


def test_evolved_covariance_examples():
    spec = make_spec(1, 1, 1.3)
    assert evolved_covariance(spec, 0.0).matrix == pytest.approx(initial_covariance(1.3).matrix, abs=1e-15)
    for t in (0.3, 2.0, 7.1):
        assert evolved_covariance(make_spec(2, 2, 0), t).matrix == pytest.approx(0.5 * np.eye(2), abs=1e-15)
    spec = make_spec(1, 1, 1)
    c = evolved_covariance(spec, math.pi / 4)
    assert 2 * c.sxx == pytest.approx(float(width(spec, math.pi / 4)) ** 2, rel=1e-14)
    with pytest.raises(NotResonant):
        evolved_covariance(make_spec(1, 2), 0.5)


def test_free_covariance_examples():
    assert free_covariance(0).matrix == pytest.approx(0.5 * np.eye(2))
    c = free_covariance(1)
    assert c.sxp == 0.5 and c.pearson == pytest.approx(1 / math.sqrt(2))
    assert free_covariance(2).sxx == 2.5


@given(gammas, squeezes, st.floats(-20, 20), st.floats(0.2, 5), st.floats(0, 30))
def test_all_constructions_are_pure(g, params, tau, w, t):
    covs = [
        initial_covariance(g),
        squeezed_covariance(params),
        free_covariance(tau),
        evolved_covariance(make_spec(w, w, g), t),
    ]
    for c in covs:
        assert abs(c.det - 0.25) <= 1e-12 * max(1.0, c.sxx * c.spp)
        assert abs(c.pearson) < 1
        assert purity(c) == pytest.approx(1.0, abs=1e-10)


@given(st.floats(0.2, 5), gammas, st.floats(0, 30))
def test_resonance_bridge(w, g, t):
    spec = make_spec(w, w, g)
    assert 2 * evolved_covariance(spec, t).sxx == pytest.approx(float(width(spec, t) / spec.sigma0) ** 2, rel=1e-12)


def test_covariance_validation():
    with pytest.raises(NotPositiveDefinite):
        CovarianceState(1.0, 2.0, 1.0)
    with pytest.raises(NotPositiveDefinite):
        CovarianceState(-1.0, 0.0, 1.0)
    with pytest.raises(UncertaintyViolation):
        CovarianceState(0.1, 0.0, 0.1)


def test_purity_examples():
    assert purity(initial_covariance(2.5)) == pytest.approx(1.0)
    assert purity(CovarianceState(1.0, 0.0, 1.0)) == 0.5


def test_wigner_gaussian_peak_and_tilt():
    assert wigner_gaussian(initial_covariance(0), 0, 0) == pytest.approx(1 / math.pi)
    for g in (-1.0, 1.0):
        cov = initial_covariance(g)
        # mass sits along the diagonal whose slope has the sign of gamma
        assert (wigner_gaussian(cov, 1, g) > wigner_gaussian(cov, 1, -g)) and np.sign(cov.sxp) == np.sign(g)


def test_wigner_gaussian_normalisation():
    axis = np.linspace(-6, 6, 401)
    xx, pp = np.meshgrid(axis, axis, indexing="ij")
    for g in (-1.0, 0.0, 1.0):
        w = wigner_gaussian(initial_covariance(g), xx, pp)
        assert np.all(w >= 0)
        assert trapezoid(trapezoid(w, axis, axis=1), axis) == pytest.approx(1.0, abs=1e-6)


def test_wigner_displacement():
    cov = CovarianceState(0.5, 0.0, 0.5, d=(1.0, -2.0))
    assert wigner_gaussian(cov, 1.0, -2.0) == pytest.approx(1 / math.pi)


def test_wigner_integral_vacuum_peak():
    spec = make_spec(1, 1, 0)
    f = initial_state(spec, np.linspace(-10, 10, 801))
    assert wigner_from_wavefunction(f, 0.0, 0.0) == pytest.approx(1 / math.pi, abs=1e-10)


def test_wigner_integral_matches_gaussian_initial():
    f = initial_state(make_spec(1, 1, 1), np.linspace(-10, 10, 801))
    cov = initial_covariance(1)
    probes = np.linspace(-2, 2, 21)
    err = max(abs(wigner_from_wavefunction(f, x, p) - wigner_gaussian(cov, x, p)) for x in probes for p in probes)
    assert err <= 1e-6


def test_wigner_integral_matches_evolved_covariance():
    spec = make_spec(1, 1, 1)
    t = 0.9
    half = 8 * max(1.0, float(width(spec, t)))
    xs = np.linspace(-half, half, 801)
    field = evolve_numeric(spec, t, xs)
    cov = evolved_covariance(spec, t)
    dx = xs[1] - xs[0]
    probes_x = [k * dx / 2 for k in range(-60, 61, 12)]
    probes_p = np.linspace(-2, 2, 11)
    err = max(abs(wigner_from_wavefunction(field, x, p) - wigner_gaussian(cov, x, p)) for x in probes_x for p in probes_p)
    assert err <= 1e-6


def test_wigner_integral_guards():
    f = initial_state(make_spec(1, 1, 0), np.linspace(-10, 10, 201))
    with pytest.raises(GridTooCoarse):
        wigner_from_wavefunction(f, 0.0, 8.0)
    with pytest.raises(ValueError):
        wigner_from_wavefunction(f, 0.01, 0.0)
