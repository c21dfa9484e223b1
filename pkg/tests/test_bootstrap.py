"""Tests for block, stationary, sieve, wild, and unit-root bootstraps."""

import numpy as np
import pytest
from scipy import stats as st
from scipy.signal import lfilter

import tsnet as T


def _ar1(phi, n, spec, burn=200):
    gen = spec.generator()
    e = gen.standard_normal(n + burn)
    return lfilter([1.0], [1.0, -phi], e)[burn:]


def test_block_full_length_nonoverlap_is_identity():
    # l = n with the deterministic partition: one block, always the
    # original series, so the replicate statistics are all the observed
    # value and the variance is exactly zero
    x = np.random.default_rng((70, 100)).standard_normal(64)
    spec = T.BlockSpec(length=64, overlap=False)
    res = T.block_bootstrap(x, lambda z: float(z.mean()), 50, T.RngSpec(1), spec)
    assert np.all(res.stats == res.observed)
    assert res.stats.var() == 0.0
    assert res.scheme == "block"


def test_block_validation():
    x = np.random.default_rng((70, 101)).standard_normal(30)
    with pytest.raises(ValueError):
        T.block_bootstrap(x, np.mean, 0, T.RngSpec(1), 5)
    for spec in (T.BlockSpec(31, overlap=False),
                 T.BlockSpec(31, overlap=True, circular=False),
                 T.BlockSpec(31, overlap=True, circular=True)):
        with pytest.raises(ValueError, match="exceeds"):
            T.block_bootstrap(x, np.mean, 10, T.RngSpec(1), spec)
    with pytest.raises(ValueError):
        T.BlockSpec(0)


def test_block_variance_tracks_lrv():
    # AR(1) phi=0.5 has omega^2 = 4; the blocked variance of the scaled
    # mean should recover it on MC average
    n = 5000
    l = int(np.ceil(n ** (1.0 / 3.0)))
    vs = []
    for i in range(10):
        x = _ar1(0.5, n, T.RngSpec(70, i))
        res = T.block_bootstrap(x, lambda z: float(np.sqrt(n) * z.mean()),
                                400, T.RngSpec(71, i), l)
        vs.append(res.stats.var())
    assert np.mean(vs) == pytest.approx(4.0, rel=0.15)


def test_block_determinism():
    x = np.random.default_rng((70, 102)).standard_normal(100)
    a = T.block_bootstrap(x, np.mean, 30, T.RngSpec(9, 3), 7)
    b = T.block_bootstrap(x, np.mean, 30, T.RngSpec(9, 3), 7)
    np.testing.assert_array_equal(a.stats, b.stats)
    c = T.block_bootstrap(x, np.mean, 30, T.RngSpec(9, 4), 7)
    assert not np.array_equal(a.stats, c.stats)


def test_stationary_long_blocks_are_rotations():
    # restart probability ~1e-12: each replicate is a circular rotation,
    # and the mean is rotation invariant
    x = np.random.default_rng((72, 100)).standard_normal(40)
    res = T.stationary_bootstrap(x, lambda z: float(z.mean()), 40,
                                 T.RngSpec(2), mean_block=1e12)
    np.testing.assert_allclose(res.stats, res.observed, rtol=1e-12)


def test_stationary_variance_ordering():
    # mean_block=1 is iid resampling (variance ~ Gamma_0); geometric
    # blocks sit near the fixed-block answer
    n = 3000
    l = int(np.ceil(n ** (1.0 / 3.0)))
    x = _ar1(0.5, n, T.RngSpec(72, 0))
    sn = lambda z: float(np.sqrt(n) * z.mean())
    v_iid = T.stationary_bootstrap(x, sn, 400, T.RngSpec(72, 1), mean_block=1.0).stats.var()
    v_sta = T.stationary_bootstrap(x, sn, 400, T.RngSpec(72, 2), mean_block=float(l)).stats.var()
    v_blk = T.block_bootstrap(x, sn, 400, T.RngSpec(72, 3), l).stats.var()
    g0 = np.mean((x - x.mean()) ** 2)
    assert v_iid == pytest.approx(g0, rel=0.25)
    assert v_iid < v_sta
    assert 0.5 < v_sta / v_blk < 2.0
    with pytest.raises(ValueError, match="mean_block"):
        T.stationary_bootstrap(x, sn, 10, T.RngSpec(3), mean_block=0.5)


def test_sieve_order_zero_is_iid_resampling():
    # p=0 must reproduce the iid residual bootstrap around the mean; the
    # generation path is replayed here draw by draw
    x = np.random.default_rng((73, 100)).standard_normal(50) + 2.0
    n, B, burn = 50, 8, 100
    res = T.sieve_bootstrap(x, lambda z: float(z.sum()), B, T.RngSpec(4, 7), p=0)
    gen = T.RngSpec(4, 7).generator()
    m = x.mean()
    resid = x - m
    resid = resid - resid.mean()
    expect = []
    for _ in range(B):
        u = resid[gen.integers(0, n, size=n + burn)]
        expect.append(float((m + u[burn:]).sum()))
    np.testing.assert_allclose(res.stats, expect, rtol=1e-12)


def test_sieve_recovers_dependence():
    x = _ar1(0.6, 2000, T.RngSpec(73, 0))

    def lag1(z):
        zc = z - z.mean()
        return float(zc[1:] @ zc[:-1] / (zc @ zc))

    res = T.sieve_bootstrap(x, lag1, 200, T.RngSpec(73, 1), p=1)
    assert abs(res.stats.mean() - lag1(x)) < 0.05


def test_sieve_order_and_stability_guards():
    x = np.random.default_rng((73, 101)).standard_normal(40)
    with pytest.raises(ValueError, match="too large"):
        T.sieve_bootstrap(x, np.mean, 10, T.RngSpec(5), p=20)
    expl = 1.2 ** np.arange(30)
    with pytest.raises(ValueError, match="nonstationary"):
        T.sieve_bootstrap(expl, np.mean, 5, T.RngSpec(5), p=1)
    with pytest.warns(UserWarning, match="nonstationary"):
        res = T.sieve_bootstrap(expl, lambda z: float(z[-1]), 3, T.RngSpec(5),
                                p=1, check_stationary=False)
    assert res.stats.shape == (3,)


def test_wild_conditional_moments():
    e = T.RngSpec(77, 0).generator().standard_normal(200)
    assert T.wild_conditional_variance(e) == float(np.mean(e**2))
    sn = lambda z: float(z.sum() / np.sqrt(200))
    res = T.wild_bootstrap(e, sn, 100000, T.RngSpec(77, 1))
    se = res.stats.std() / np.sqrt(res.B)
    assert abs(res.stats.mean()) < 3.0 * se
    assert res.stats.var() == pytest.approx(np.mean(e**2), rel=0.05)


def test_wild_rademacher_identities():
    e = T.RngSpec(77, 0).generator().standard_normal(120)
    # unit multipliers preserve the sum of squares replicate by replicate
    res = T.wild_bootstrap(e, lambda z: float(z @ z), 200, T.RngSpec(77, 3),
                           multiplier="rademacher")
    np.testing.assert_allclose(res.stats, float(e @ e), rtol=1e-12)
    res2 = T.wild_bootstrap(e, lambda z: float(z.sum()), 100000,
                            T.RngSpec(77, 2), multiplier="rademacher")
    assert abs(st.skew(res2.stats)) < 0.02
    with pytest.raises(ValueError, match="multiplier"):
        T.wild_bootstrap(e, np.mean, 10, T.RngSpec(6), multiplier="uniform")


def test_unitroot_bootstrap_degenerate_input():
    x = np.full(50, 3.0)
    with pytest.raises(ValueError, match="degenerate"):
        T.residual_unitroot_bootstrap(x, 10, T.RngSpec(7), block=5)
    # exact AR(1) path without noise degenerates the same way
    x2 = 3.0 * 0.9 ** np.arange(60)
    with pytest.raises(ValueError, match="degenerate"):
        T.residual_unitroot_bootstrap(x2, 10, T.RngSpec(7), block=5)


def test_unitroot_bootstrap_rejects_stationary_alternative():
    rej = 0
    for i in range(50):
        x = _ar1(0.8, 500, T.RngSpec(75, i), burn=100)
        res = T.residual_unitroot_bootstrap(x, 199, T.RngSpec(76, i), block=10)
        p = T.bootstrap_pvalue(res.observed, res.stats, tail="left")
        rej += p <= 0.05
    assert rej >= 40


def test_unitroot_bootstrap_statistic_convention():
    gen = T.RngSpec(75, 100).generator()
    x = np.cumsum(gen.standard_normal(300))
    res = T.residual_unitroot_bootstrap(x, 50, T.RngSpec(75, 101), block=8)
    y, ylag = x[1:], x[:-1]
    rho = float(ylag @ y / (ylag @ ylag))
    assert res.observed == pytest.approx((len(x) - 1) * (rho - 1.0), rel=1e-12)
    assert res.stats.shape == (50,)
    assert res.scheme == "residual-unitroot"


def test_pvalue_conventions():
    draws = np.arange(1.0, 100.0)
    assert T.bootstrap_pvalue(0.5, draws, tail="right") == 1.0
    assert T.bootstrap_pvalue(1000.0, draws, tail="right") == 1.0 / 100.0
    assert T.bootstrap_pvalue(1000.0, draws, tail="left") == 1.0
    assert T.bootstrap_pvalue(0.5, draws, tail="left") == 1.0 / 100.0
    assert T.bootstrap_pvalue(-1000.0, draws, tail="two") == 1.0 / 100.0
    # ties count as extreme
    assert T.bootstrap_pvalue(99.0, draws, tail="right") == 2.0 / 100.0
    with pytest.raises(ValueError, match="tail"):
        T.bootstrap_pvalue(0.0, draws, tail="upper")


def test_pvalue_uniform_under_null():
    # idealized pipeline: replicates drawn from the true null law of the
    # statistic, so p-values must be uniform up to 1/(B+1) discreteness
    gen = T.RngSpec(74, 0).generator()
    R, B = 10000, 199
    pv = np.empty(R)
    for i in range(R):
        draws = gen.standard_normal(B)
        obs = gen.standard_normal()
        pv[i] = T.bootstrap_pvalue(obs, draws, tail="two")
    assert st.kstest(pv, "uniform").statistic < 0.02
