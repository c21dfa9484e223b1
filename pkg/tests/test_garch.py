"""Conditional variance filtering and quasi-likelihood estimation."""

import numpy as np
import pytest

import tsnet as T


def test_filter_hand_recursion():
    # sigma2_1 = 1 + 0.1*4 + 0.8*10 = 9.4, then rolls forward
    spec = T.GarchSpec(1.0, 0.1, 0.8, 0.0)
    s2 = T.garch_filter(np.array([2.0, 1.0, 1.0]), spec,
                        sigma2_0=10.0, eps2_0=4.0)
    np.testing.assert_allclose(s2, [9.4, 8.92, 8.236])


def test_filter_constant_when_alpha_beta_zero():
    spec = T.GarchSpec(0.7, 0.0, 0.0, 0.0)
    s2 = T.garch_filter(np.random.default_rng(0).standard_normal(40), spec)
    np.testing.assert_allclose(s2, 0.7)


def test_filter_matches_python_loop():
    gen = np.random.default_rng(1)
    eps = gen.standard_normal(200)
    spec = T.GarchSpec(0.2, 0.15, 0.7, 0.0)
    got = T.garch_filter(eps, spec, sigma2_0=1.5, eps2_0=0.5)
    s_prev, e_prev = 1.5, 0.5
    want = np.empty(200)
    for t in range(200):
        want[t] = 0.2 + 0.15 * e_prev + 0.7 * s_prev
        s_prev, e_prev = want[t], eps[t] ** 2
    np.testing.assert_allclose(got, want, rtol=1e-12)


def test_spec_validation():
    with pytest.raises(ValueError):
        T.GarchSpec(-0.1, 0.1, 0.8, 0.0)
    with pytest.raises(ValueError):
        T.GarchSpec(0.1, 0.6, 0.5, 0.0)  # alpha + beta >= 1


def test_simulate_matches_filter():
    spec = T.GarchSpec(0.1, 0.1, 0.8, 0.0)
    y, s2 = T.simulate_garch(spec, 500, T.RngSpec(2, 0))
    assert y.shape == (500,) and s2.shape == (500,)
    # simulated variance level near omega/(1-alpha-beta) = 1
    assert np.mean(s2) == pytest.approx(1.0, rel=0.3)


def test_qmle_flat_truth_recovers_sample_variance():
    # alpha = beta = 0 truth: the implied unconditional variance matches
    # the sample second moment
    e = 1.3 * T.RngSpec(53, 0).generator().standard_normal(4000)
    fit = T.garch_qmle(e)
    uncond = fit.spec.omega / (1.0 - fit.spec.alpha - fit.spec.beta)
    target = float(np.mean((e - e.mean()) ** 2))
    assert uncond == pytest.approx(target, rel=0.05)


def test_qmle_recovers_garch_parameters():
    spec = T.GarchSpec(0.1, 0.1, 0.8, 0.0)
    y, _ = T.simulate_garch(spec, 20000, T.RngSpec(54, 1))
    fit = T.garch_qmle(y)
    assert fit.converged
    err = max(abs(fit.spec.omega - 0.1), abs(fit.spec.alpha - 0.1),
              abs(fit.spec.beta - 0.8))
    assert err < 0.05


def test_qmle_objective_path_monotone():
    y, _ = T.simulate_garch(T.GarchSpec(0.1, 0.1, 0.8, 0.0), 5000,
                            T.RngSpec(54, 0))
    fit = T.garch_qmle(y)
    path = np.asarray(fit.objective_path)
    assert path.size >= 2
    assert np.all(np.diff(path) <= 1e-9)


def test_qmle_ar1_mean_two_step():
    gen = T.RngSpec(55, 0).generator()
    eps, _ = T.simulate_garch(T.GarchSpec(0.1, 0.1, 0.8, 0.0), 8000, gen)
    y = np.empty(8000)
    y[0] = eps[0]
    for t in range(1, 8000):
        y[t] = 0.5 * y[t - 1] + eps[t]
    fit = T.garch_qmle(y, mean="ar1")
    assert fit.ar_coeff == pytest.approx(0.5, abs=0.05)
    assert abs(fit.spec.beta - 0.8) < 0.1


def test_qmle_rejects_short_samples():
    with pytest.raises(ValueError):
        T.garch_qmle(np.random.default_rng(3).standard_normal(49))
