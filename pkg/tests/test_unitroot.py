"""Autoregression fits, ADF and Phillips statistics, DF null tables."""

import warnings

import numpy as np
import pytest
from scipy.signal import lfilter

import tsnet as T


def test_ols_ar_hand_value():
    # y=(1,2,3), one lag, no deterministics: rho = (2*1+3*2)/(1+4) = 1.6
    fit = T.ols_ar([1.0, 2.0, 3.0], p=1, deterministic="none")
    assert fit.ar_coeffs[0] == pytest.approx(1.6)
    assert fit.nobs == 2


def test_ols_ar_needs_enough_observations():
    with pytest.raises(ValueError):
        T.ols_ar([1.0, 2.0], p=1)


def test_adf_matches_two_pass_oracle_exactly():
    x = np.cumsum(T.RngSpec(21, 0).generator().standard_normal(400))
    res = T.adf_test(x, p=0, deterministic="none")
    y, ylag = x[1:], x[:-1]
    a = float(ylag @ y) / float(ylag @ ylag)
    r = y - a * ylag
    s2 = float(r @ r) / (len(y) - 1)
    t = (a - 1.0) / np.sqrt(s2 / float(ylag @ ylag))
    assert res.alpha_hat == a
    assert res.stat_t == t
    assert res.stat_coef == len(y) * (a - 1.0)


def test_adf_explosive_series_signs():
    x = 2.0 ** np.arange(12)
    res = T.adf_test(x, p=0, deterministic="none")
    assert res.alpha_hat > 1.0
    assert res.stat_t > 0.0


def test_adf_left_tail_power_against_stationary_ar1():
    cv = T.df_limit_mc(2000, reps=4000, rng=T.RngSpec(34, 0)).coef.quantile(0.05)
    gen = T.RngSpec(35, 0).generator()
    rejections = 0
    for _ in range(200):
        x = lfilter([1.0], [1.0, -0.2], gen.standard_normal(2000))
        rejections += T.adf_test(x, p=0).stat_coef < cv
    assert rejections / 200 >= 0.95


def test_default_adf_lags_rule():
    assert T.default_adf_lags(100) == 4
    assert T.default_adf_lags(50) == 3
    assert T.default_adf_lags(25) == 2


def test_phillips_reduces_to_raw_statistic_without_correction():
    # divisor-T residual variance plus sub-unit bandwidth: the serial
    # correlation correction vanishes identically
    x = np.cumsum(T.RngSpec(36, 0).generator().standard_normal(300))
    res = T.phillips_z(x, kernel=T.KernelSpec("bartlett", 0.5),
                       df_adjust=False)
    assert res.stat_coef == res.nobs * (res.alpha_hat - 1.0)


def test_phillips_iid_correction_is_small():
    gen = T.RngSpec(37, 0).generator()
    gaps = np.empty(200)
    for i in range(200):
        x = np.cumsum(gen.standard_normal(5000))
        res = T.phillips_z(x)
        gaps[i] = abs(res.stat_coef - res.nobs * (res.alpha_hat - 1.0))
    assert np.median(gaps) < 0.1


def test_phillips_rejects_short_series():
    with pytest.raises(ValueError):
        T.phillips_z(np.arange(5.0))


def test_phillips_degenerate_residuals_raise():
    with pytest.raises(ValueError, match="numerically zero"):
        T.phillips_z(np.ones(30))
    with pytest.raises(ValueError, match="numerically zero"):
        # exact linear trend is fit perfectly by (const, lag)
        T.phillips_z(np.arange(30.0), deterministic="const")


def test_phillips_nonpositive_lrv_warns_and_nans_zt():
    x = np.tile([1.0, 0.0, -1.0], 20) + 0.2 * np.random.default_rng(0).standard_normal(60)
    with pytest.warns(UserWarning, match="nonpositive long-run variance"):
        res = T.phillips_z(x, kernel=T.KernelSpec("truncated", 2.0))
    assert res.s2_lr <= 0.0
    assert np.isnan(res.stat_t)
    assert np.isfinite(res.stat_coef)


def test_phillips_rejects_unknown_deterministic():
    with pytest.raises(ValueError):
        T.phillips_z(np.arange(20.0) ** 1.5, deterministic="trend")


def test_df_limit_median_is_negative():
    table = T.df_limit_mc(500, reps=4000, rng=T.RngSpec(30, 0))
    assert table.coef.quantile(0.5) < 0.0


def test_df_limit_quantiles_stable_across_seeds():
    a = T.df_limit_mc(1000, reps=20000, rng=T.RngSpec(31, 0))
    b = T.df_limit_mc(1000, reps=20000, rng=T.RngSpec(32, 0))
    assert abs(a.coef.quantile(0.05) - b.coef.quantile(0.05)) < 0.15


def test_df_limit_insensitive_to_sample_size():
    a = T.df_limit_mc(1000, reps=20000, rng=T.RngSpec(31, 0))
    c = T.df_limit_mc(4000, reps=20000, rng=T.RngSpec(33, 0))
    assert abs(a.coef.quantile(0.05) - c.coef.quantile(0.05)) < 0.25


def test_df_limit_demeaned_case_shifts_left():
    none = T.df_limit_mc(500, reps=4000, rng=T.RngSpec(38, 0))
    const = T.df_limit_mc(500, reps=4000, rng=T.RngSpec(38, 0),
                          deterministic="const")
    assert const.coef.quantile(0.05) < none.coef.quantile(0.05)
    assert const.t.quantile(0.05) < none.t.quantile(0.05)


def test_quantile_table_interpolates_monotonically():
    table = T.df_limit_mc(200, reps=2000, rng=T.RngSpec(39, 0)).coef
    qs = [table.quantile(p) for p in (0.01, 0.05, 0.5, 0.95)]
    assert qs == sorted(qs)
