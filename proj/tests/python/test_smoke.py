import math

import numpy as np
import pytest
from scipy import integrate, stats

import rsbm


def test_preset_and_density_normalizes():
    p = rsbm.preset("model1")
    mass, _ = integrate.quad(lambda y: rsbm.transition_density(p.t, 0.0, y, p.params), -20, 20,
                             points=[0.0], limit=200)
    assert mass == pytest.approx(1.0, abs=1e-6)


def test_one_drift_matches_scipy_brownian():
    params = rsbm.ModelParams(0.4, 0.4, 0.0)
    for y in (-1.5, -0.2, 0.7, 2.0):
        ref = stats.norm.pdf(y, loc=0.4 * 1.3, scale=math.sqrt(1.3))
        assert rsbm.transition_density(1.3, 0.0, y, params) == pytest.approx(ref, rel=1e-8)


def test_bad_beta_raises():
    with pytest.raises(ValueError, match="beta"):
        rsbm.ModelParams(1.0, -1.0, 1.5)


def test_escape_probabilities_sum_to_one():
    up, down = rsbm.escape_probabilities(0.3, rsbm.ModelParams(-2.0, 1.0, 0.3))
    assert up + down == pytest.approx(1.0, abs=1e-12)


def test_fit_alpha_driftless():
    p = rsbm.preset("model1")
    fit = rsbm.fit_tna(p.params, p.t)
    assert fit.alpha == pytest.approx(0.35, abs=1e-3)
    assert fit.objective < 0.01


def test_mixture_samples_pass_ks():
    p = rsbm.preset("model1")
    fit = rsbm.fit_tna(p.params, p.t)
    u = np.random.default_rng(0).uniform(size=20000)
    xs = [fit.quantile(v) for v in u]
    grid = np.linspace(-10, 10, 1001)
    ref = [rsbm.cdf_origin(p.t, z, p.params) for z in grid]
    _, pvalue = rsbm.ks_test(xs, lambda z: float(np.interp(z, grid, ref)))
    assert pvalue > 0.01


def test_walk_is_deterministic():
    p = rsbm.preset("model3")
    a = rsbm.simulate_paths(p.params, 0.0, p.t, n_steps=200, n_paths=500, seed=1)
    b = rsbm.simulate_paths(p.params, 0.0, p.t, n_steps=200, n_paths=500, seed=1)
    assert a == b


def test_special_functions_against_scipy():
    from scipy import special
    for z in (0.0, 0.5, 3.0, 12.0, 27.0):
        assert rsbm.erfcx(z) == pytest.approx(special.erfcx(z), rel=1e-14)
    for q in (1e-10, 0.01, 0.5, 0.97):
        assert rsbm.norm_quantile(q) == pytest.approx(stats.norm.ppf(q), rel=1e-12)


def test_validate_battery_model1():
    p = rsbm.preset("model1")
    checks = {c["name"]: c["status"] for c in rsbm.validate(p.params, p.t)}
    assert checks["stationary"] == "skipped"
    assert all(s in ("pass", "skipped") for s in checks.values())
