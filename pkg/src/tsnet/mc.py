"""Monte Carlo harness: experiment registry, config files, CSV output.

An experiment is a named (setup, rep, summarize) triple.  `setup` builds
shared context once (critical-value tables, graph distances), `rep`
produces one replication's row of statistics, and `summarize` reduces
the stacked rows to a flat dict of scalars.  Replication r always draws
from stream `cfg.stream + r`, so results are invariant to `jobs`;
auxiliary simulations (limit tables and the like) use streams at
`cfg.stream + cfg.reps` and beyond.

Config files are line oriented::

    # size of the instrumented predictive test
    experiment = ivx-null
    reps = 5000
    seed = 7
    n = 1000
    c = -5
    grid.c = 0, -5, -20

Keys other than the reserved ones (experiment, reps, seed, stream,
jobs, level) are free-form parameters looked up by exact name; each
experiment documents which ones it reads.  `grid.<name>` lines declare
sweep axes for `size_power_grid`, which runs the cartesian product and
moves each cell onto its own stream range.

CSV output starts with a `#schema=` line and a `#config=` line, then a
header row.  Floats are written with `repr`, so identical configs give
byte-identical files.
"""

from __future__ import annotations

import functools
import itertools
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np
from scipy import stats

from ._checks import as_matrix, as_series, check_positive_int
from .bootstrap import BlockSpec, residual_unitroot_bootstrap
from .breaks import nbb_sup_mc, split_wald, sup_wald
from .coint import fmols
from .garch import GarchSpec, garch_qmle, simulate_garch
from .lrv import KernelSpec, hac_lrv
from .netdep import cycle_graph, graph_distance, network_hac, simulate_graph_ma
from .predreg import IvxSpec, ivx_estimate
from .randmat import mp_support, sample_cov_spectrum
from .series import (
    LinearProcessSpec,
    LurSpec,
    RngSpec,
    SystemSpec,
    simulate_linear_process,
    simulate_lur_ar,
    simulate_predictive_system,
)
from .unitroot import df_limit_mc, phillips_z

__all__ = [
    "ExperimentConfig",
    "Experiment",
    "McResult",
    "EXPERIMENTS",
    "parse_config",
    "parse_config_file",
    "run_experiment",
    "size_power_grid",
    "write_csv",
    "read_csv",
    "NestedForecastResult",
    "nested_forecast_test",
]

_RESERVED_KEYS = ("experiment", "reps", "seed", "stream", "jobs", "level")
_SCHEMA_VERSION = "v1"


# ---------------------------------------------------------------------------
# configuration


@dataclass
class ExperimentConfig:
    """Resolved settings for one experiment run.

    `params` holds everything the experiment itself interprets; reserved
    keys control the harness.  `grid` maps parameter names to value
    tuples for sweeps and is ignored by `run_experiment`.
    """

    experiment: str
    reps: int = 1000
    seed: int = 0
    stream: int = 0
    jobs: int = 1
    level: float = 0.05
    params: dict = field(default_factory=dict)
    grid: dict = field(default_factory=dict)

    def param(self, key: str, default=None):
        return self.params.get(key, default)

    def require(self, key: str):
        if key not in self.params:
            raise KeyError(f"experiment {self.experiment!r} needs parameter {key!r}")
        return self.params[key]


def _parse_scalar(token: str):
    t = token.strip()
    low = t.lower()
    if low in ("true", "false"):
        return low == "true"
    if low == "none":
        return None
    try:
        return int(t)
    except ValueError:
        pass
    try:
        return float(t)
    except ValueError:
        pass
    return t


def _parse_value(text: str):
    if "," in text:
        return tuple(_parse_scalar(tok) for tok in text.split(","))
    return _parse_scalar(text)


def parse_config(text: str) -> ExperimentConfig:
    """Parse `key = value` lines into an ExperimentConfig.

    Blank lines and lines starting with `#` are skipped.  Values are
    coerced to int, float, bool, or None when they look like one;
    comma-separated values become tuples.
    """
    cfg = ExperimentConfig(experiment="")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if not key:
            raise ValueError(f"line {lineno}: empty key")
        parsed = _parse_value(value)
        if key == "experiment":
            cfg.experiment = str(parsed)
        elif key == "reps":
            cfg.reps = check_positive_int(parsed, "reps")
        elif key == "seed":
            cfg.seed = int(parsed)
        elif key == "stream":
            cfg.stream = int(parsed)
        elif key == "jobs":
            cfg.jobs = check_positive_int(parsed, "jobs")
        elif key == "level":
            cfg.level = float(parsed)
        elif key.startswith("grid."):
            vals = parsed if isinstance(parsed, tuple) else (parsed,)
            cfg.grid[key[len("grid."):]] = vals
        else:
            cfg.params[key] = parsed
    if not cfg.experiment:
        raise ValueError("config must set 'experiment'")
    return cfg


def parse_config_file(path) -> ExperimentConfig:
    return parse_config(Path(path).read_text())


# ---------------------------------------------------------------------------
# CSV I/O


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _config_comment(cfg: ExperimentConfig) -> str:
    # jobs is omitted on purpose: output must not depend on parallelism
    head = [f"experiment={cfg.experiment}", f"reps={cfg.reps}",
            f"seed={cfg.seed}", f"stream={cfg.stream}", f"level={_fmt(cfg.level)}"]
    tail = []
    for key in sorted(cfg.params):
        val = cfg.params[key]
        if isinstance(val, tuple):
            text = " ".join(_fmt(v) for v in val)
        else:
            text = _fmt(val)
        tail.append(f"{key}={text}")
    return "#config=" + ";".join(head + tail)


def write_csv(path, schema: str, columns, rows, comments=()) -> Path:
    """Write a CSV with a #schema line, optional #-comments, and a header."""
    path = Path(path)
    lines = [f"#schema={schema}"]
    lines.extend(comments)
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def read_csv(path):
    """Read a CSV written by `write_csv`.

    Returns (schema, columns, data) where data is a float ndarray with
    one row per record (possibly empty).
    """
    schema = ""
    columns: list[str] = []
    body: list[list[float]] = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("#schema="):
                schema = line[len("#schema="):]
            continue
        if not columns:
            columns = line.split(",")
            continue
        body.append([float(tok) for tok in line.split(",")])
    data = np.asarray(body, dtype=float) if body else np.empty((0, len(columns)))
    return schema, columns, data


# ---------------------------------------------------------------------------
# experiment protocol


@dataclass(frozen=True)
class Experiment:
    """Registered experiment: per-rep statistics plus a summary reducer."""

    name: str
    columns: tuple[str, ...]
    setup: Callable
    rep: Callable
    summarize: Callable


EXPERIMENTS: dict[str, Experiment] = {}


def _register(name, columns, rep, summarize, setup=None):
    EXPERIMENTS[name] = Experiment(
        name=name, columns=tuple(columns),
        setup=setup if setup is not None else (lambda cfg: {}),
        rep=rep, summarize=summarize)


def _rep_rng(cfg: ExperimentConfig, r: int) -> RngSpec:
    return RngSpec(cfg.seed, cfg.stream).substream(r)


def _aux_rng(cfg: ExperimentConfig, j: int = 0) -> RngSpec:
    return RngSpec(cfg.seed, cfg.stream).substream(cfg.reps + j)


def _run_rep(name: str, cfg: ExperimentConfig, ctx: dict, r: int):
    return EXPERIMENTS[name].rep(cfg, ctx, r)


@dataclass
class McResult:
    """Stacked replication draws plus the summary dict and written files."""

    experiment: str
    config: ExperimentConfig
    columns: tuple[str, ...]
    draws: np.ndarray
    summary: dict
    files: tuple[Path, ...] = ()


def run_experiment(cfg: ExperimentConfig, out=None) -> McResult:
    """Run all replications of a registered experiment.

    out, when given, is the per-replication CSV path (or a directory,
    in which case <experiment>.csv inside it); the summary goes next to
    it with a -summary suffix.
    """
    if cfg.experiment not in EXPERIMENTS:
        known = ", ".join(sorted(EXPERIMENTS))
        raise ValueError(f"unknown experiment {cfg.experiment!r}; have: {known}")
    exp = EXPERIMENTS[cfg.experiment]
    ctx = exp.setup(cfg)
    if cfg.jobs > 1:
        worker = functools.partial(_run_rep, cfg.experiment, cfg, ctx)
        chunk = max(1, cfg.reps // (cfg.jobs * 8))
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(worker, range(cfg.reps), chunksize=chunk))
    else:
        rows = [exp.rep(cfg, ctx, r) for r in range(cfg.reps)]
    draws = np.asarray(rows, dtype=float)
    summary = exp.summarize(cfg, ctx, draws)

    files = ()
    if out is not None:
        out = Path(out)
        if out.is_dir():
            out = out / f"{cfg.experiment}.csv"
        comment = _config_comment(cfg)
        rep_rows = ((r, *draws[r]) for r in range(cfg.reps))
        per_rep = write_csv(out, f"{cfg.experiment}/{_SCHEMA_VERSION}",
                            ("rep",) + exp.columns, rep_rows, comments=[comment])
        summ_path = out.with_name(out.stem + "-summary" + out.suffix)
        summ = write_csv(summ_path, f"{cfg.experiment}-summary/{_SCHEMA_VERSION}",
                         tuple(summary), [tuple(summary.values())],
                         comments=[comment])
        files = (per_rep, summ)
    return McResult(experiment=cfg.experiment, config=cfg, columns=exp.columns,
                    draws=draws, summary=summary, files=files)


def size_power_grid(cfg: ExperimentConfig, out=None):
    """Run the experiment over the cartesian product of cfg.grid.

    Each cell gets a disjoint stream range (shifted by reps plus a
    reserve of 64 auxiliary streams) so cells are independent and
    reproducible in isolation.  Returns (columns, rows, results) and
    optionally writes one summary CSV.
    """
    if not cfg.grid:
        raise ValueError("size_power_grid needs at least one grid.<name> axis")
    axes = sorted(cfg.grid)
    combos = list(itertools.product(*(cfg.grid[a] for a in axes)))
    stride = cfg.reps + 64
    results = []
    rows = []
    columns: list[str] = []
    for i, combo in enumerate(combos):
        params = dict(cfg.params)
        params.update(dict(zip(axes, combo)))
        cell = ExperimentConfig(experiment=cfg.experiment, reps=cfg.reps,
                                seed=cfg.seed, stream=cfg.stream + i * stride,
                                jobs=cfg.jobs, level=cfg.level, params=params)
        res = run_experiment(cell)
        results.append(res)
        if not columns:
            columns = [f"grid_{a}" for a in axes] + list(res.summary)
        rows.append(tuple(combo) + tuple(res.summary.values()))
    files = ()
    if out is not None:
        out = Path(out)
        if out.is_dir():
            out = out / f"{cfg.experiment}-grid.csv"
        files = (write_csv(out, f"{cfg.experiment}-grid/{_SCHEMA_VERSION}",
                           columns, rows, comments=[_config_comment(cfg)]),)
    return columns, rows, results, files


# ---------------------------------------------------------------------------
# nested model comparison by recursive one-step forecasts


@dataclass(frozen=True)
class NestedForecastResult:
    """Accumulated out-of-sample loss difference between nested models.

    stat is sum_t (e_small,t^2 - e_big,t^2) / sigma2, positive when the
    larger model forecasts better; path is the running partial sum of
    the normalized differences.  start is the pair index of the first
    forecast actually produced (equal to the requested k0 unless the
    start had to be postponed).
    """

    stat: float
    path: np.ndarray
    errors_small: np.ndarray
    errors_big: np.ndarray
    sigma2: float
    k0: int
    start: int
    nobs: int


def nested_forecast_test(y, x_small, x_extra, k0: int) -> NestedForecastResult:
    """Compare recursive forecasts of y from two nested predictive models.

    Both models regress y_t on an intercept and lagged regressors; the
    small model uses x_small only, the big one appends x_extra.  For
    each t past the training cut k0 (counted in pairs), coefficients
    are re-estimated on all earlier pairs and a one-step forecast error
    recorded.  The loss differences are scaled by the big model's
    full-sample residual variance.

    A k0 too small to identify the nesting model (or an early singular
    design) postpones the start to the first well-conditioned pair
    index, with a warning.
    """
    y_arr = as_series(y, "y", min_len=8)
    xs = as_matrix(x_small, "x_small")
    xe = as_matrix(x_extra, "x_extra")
    n = y_arr.shape[0]
    if xs.shape[0] != n or xe.shape[0] != n:
        raise ValueError("y, x_small, x_extra must have equal length")

    ys = y_arr[1:]
    z = np.hstack([np.ones((n - 1, 1)), xs[:-1], xe[:-1]])
    m, p_big = z.shape
    p_small = 1 + xs.shape[1]
    k0 = check_positive_int(k0, "k0")
    if k0 >= m:
        raise ValueError(f"k0 must be < {m} pairs, got {k0}")

    # full-sample residual variance of the nesting model
    beta_full, *_ = np.linalg.lstsq(z, ys, rcond=None)
    resid_full = ys - z @ beta_full
    sigma2 = float(resid_full @ resid_full / (m - p_big))
    # exact fits leave only roundoff, which is no scale for the losses
    if sigma2 <= 1e-20 * max(1.0, float(ys @ ys) / m):
        raise ValueError("degenerate full-sample fit; cannot scale losses")

    gram = z[:k0].T @ z[:k0]
    moment = z[:k0].T @ ys[:k0]
    e_small = []
    e_big = []
    start = None
    for t in range(k0, m):
        zt = z[t]
        if start is None:
            # postpone until the nesting-model design is invertible
            if (t < p_big
                    or np.linalg.cond(gram) > 1e12
                    or np.linalg.cond(gram[:p_small, :p_small]) > 1e12):
                gram += np.outer(zt, zt)
                moment += zt * ys[t]
                continue
            start = t
            if start > k0:
                warnings.warn(f"forecast start postponed from pair {k0} "
                              f"to {start} (singular early design)")
        b_big = np.linalg.solve(gram, moment)
        b_small = np.linalg.solve(gram[:p_small, :p_small], moment[:p_small])
        e_big.append(ys[t] - zt @ b_big)
        e_small.append(ys[t] - zt[:p_small] @ b_small)
        gram += np.outer(zt, zt)
        moment += zt * ys[t]
    if start is None:
        raise ValueError("no well-conditioned forecast origin before the end")

    e_small = np.asarray(e_small)
    e_big = np.asarray(e_big)
    diffs = (e_small**2 - e_big**2) / sigma2
    path = np.cumsum(diffs)
    return NestedForecastResult(stat=float(path[-1]), path=path,
                                errors_small=e_small, errors_big=e_big,
                                sigma2=sigma2, k0=k0, start=start, nobs=m)


# ---------------------------------------------------------------------------
# experiments


def _kernel_from(cfg: ExperimentConfig) -> KernelSpec:
    return KernelSpec(family=str(cfg.param("family", "bartlett")),
                      bandwidth=cfg.param("bandwidth", None))


def _ar1_clt_rep(cfg, ctx, r):
    n = int(cfg.param("n", 5000))
    rho = float(cfg.param("rho", 0.5))
    gen = _rep_rng(cfg, r).generator()
    x0 = float(gen.standard_normal()) / np.sqrt(1.0 - rho**2)
    spec = LurSpec(c=(rho - 1.0) * n, gamma=1.0)
    x = simulate_lur_ar(spec, n, rng=gen, x0=x0)
    num = float(x[1:] @ x[:-1])
    den = float(x[:-1] @ x[:-1])
    rho_hat = num / den
    z = np.sqrt(n) * (rho_hat - rho)
    return (rho_hat, z)


def _ar1_clt_summarize(cfg, ctx, draws):
    rho = float(cfg.param("rho", 0.5))
    z = draws[:, 1]
    var_target = 1.0 - rho**2
    ks = stats.kstest(z, "norm", args=(0.0, np.sqrt(var_target)))
    return {
        "n": int(cfg.param("n", 5000)),
        "rho": rho,
        "mean_z": float(z.mean()),
        "var_z": float(z.var()),
        "var_target": var_target,
        "var_rel_err": float(abs(z.var() - var_target) / var_target),
        "ks_stat": float(ks.statistic),
    }


_register("ar1-clt", ("rho_hat", "z"), _ar1_clt_rep, _ar1_clt_summarize)


def _hac_lrv_rep(cfg, ctx, r):
    n = int(cfg.param("n", 100000))
    phi = float(cfg.param("phi", 0.5))
    gen = _rep_rng(cfg, r).generator()
    x0 = float(gen.standard_normal()) / np.sqrt(1.0 - phi**2)
    x = simulate_lur_ar(LurSpec(c=(phi - 1.0) * n, gamma=1.0), n, rng=gen, x0=x0)
    est = hac_lrv(x, kernel=_kernel_from(cfg))
    return (est.scalar, est.bandwidth)


def _hac_lrv_summarize(cfg, ctx, draws):
    phi = float(cfg.param("phi", 0.5))
    omega_true = 1.0 / (1.0 - phi) ** 2
    mean_omega = float(draws[:, 0].mean())
    return {
        "n": int(cfg.param("n", 100000)),
        "phi": phi,
        "bandwidth": float(draws[0, 1]),
        "mean_omega": mean_omega,
        "omega_true": omega_true,
        "rel_err": float(abs(mean_omega - omega_true) / omega_true),
    }


_register("hac-lrv", ("omega_hat", "bandwidth"), _hac_lrv_rep,
          _hac_lrv_summarize)


def _phillips_setup(cfg):
    n = int(cfg.param("n", 1000))
    det = str(cfg.param("deterministic", "none"))
    cv_reps = int(cfg.param("cv_reps", 20000))
    tables = df_limit_mc(n, deterministic=det, reps=cv_reps, rng=_aux_rng(cfg))
    return {"cv_coef": tables.coef.quantile(cfg.level),
            "cv_t": tables.t.quantile(cfg.level)}


def _phillips_rep(cfg, ctx, r):
    n = int(cfg.param("n", 1000))
    theta = float(cfg.param("theta", 0.5))
    det = str(cfg.param("deterministic", "none"))
    gen = _rep_rng(cfg, r).generator()
    u = simulate_linear_process(LinearProcessSpec((1.0, theta)), n, rng=gen)
    y = np.cumsum(u)
    res = phillips_z(y, kernel=_kernel_from(cfg), deterministic=det)
    raw = res.nobs * (res.alpha_hat - 1.0)
    return (res.stat_coef, res.stat_t, raw)


def _phillips_summarize(cfg, ctx, draws):
    return {
        "n": int(cfg.param("n", 1000)),
        "theta": float(cfg.param("theta", 0.5)),
        "level": cfg.level,
        "cv_coef": ctx["cv_coef"],
        "cv_t": ctx["cv_t"],
        "size_zalpha": float((draws[:, 0] < ctx["cv_coef"]).mean()),
        "size_zt": float((draws[:, 1] < ctx["cv_t"]).mean()),
        "size_raw": float((draws[:, 2] < ctx["cv_coef"]).mean()),
    }


_register("phillips-size", ("z_alpha", "z_t", "raw_coef"), _phillips_rep,
          _phillips_summarize, setup=_phillips_setup)


def _fmols_rep(cfg, ctx, r):
    n = int(cfg.param("n", 1000))
    corr = float(cfg.param("corr", 0.9))
    beta = float(cfg.param("beta", 2.0))
    intercept = float(cfg.param("intercept", 1.0))
    gen = _rep_rng(cfg, r).generator()
    chol = np.linalg.cholesky(np.array([[1.0, corr], [corr, 1.0]]))
    shocks = gen.standard_normal((n, 2)) @ chol.T
    x = np.cumsum(shocks[:, 1])
    y = intercept + beta * x + shocks[:, 0]
    res = fmols(y, x)
    t_plus = (res.beta_plus[1] - beta) / res.se[1]
    # textbook iid-error OLS t for contrast
    z = np.hstack([np.ones((res.nobs, 1)), x[-res.nobs:, None]])
    zz_inv = np.linalg.inv(z.T @ z)
    s2 = float(res.residuals_ols @ res.residuals_ols / (res.nobs - 2))
    t_ols = (res.beta_ols[1] - beta) / np.sqrt(s2 * zz_inv[1, 1])
    return (float(t_plus), float(t_ols))


def _fmols_summarize(cfg, ctx, draws):
    crit = stats.norm.ppf(1.0 - cfg.level / 2.0)
    return {
        "n": int(cfg.param("n", 1000)),
        "corr": float(cfg.param("corr", 0.9)),
        "level": cfg.level,
        "size_fm": float((np.abs(draws[:, 0]) > crit).mean()),
        "size_ols": float((np.abs(draws[:, 1]) > crit).mean()),
    }


_register("fmols-size", ("t_fm", "t_ols"), _fmols_rep, _fmols_summarize)


def _ivx_rep(cfg, ctx, r):
    n = int(cfg.param("n", 1000))
    c = float(cfg.param("c", 0.0))
    gamma = float(cfg.param("gamma", 1.0))
    corr = float(cfg.param("corr", 0.9))
    beta = float(cfg.param("beta", 0.0))
    spec = SystemSpec(beta=(beta,), lur=(LurSpec(c=c, gamma=gamma),),
                      intercept=float(cfg.param("intercept", 0.0)),
                      sigma_ue=((1.0, corr), (corr, 1.0)))
    y, x = simulate_predictive_system(spec, n, _rep_rng(cfg, r))
    ivx = IvxSpec(c_z=float(cfg.param("c_z", -1.0)),
                  beta_z=float(cfg.param("beta_z", 0.95)))
    res = ivx_estimate(y, x, spec=ivx)
    return (res.wald, res.pvalue, float(res.beta[0]))


def _ivx_summarize(cfg, ctx, draws):
    return {
        "n": int(cfg.param("n", 1000)),
        "c": float(cfg.param("c", 0.0)),
        "gamma": float(cfg.param("gamma", 1.0)),
        "corr": float(cfg.param("corr", 0.9)),
        "beta": float(cfg.param("beta", 0.0)),
        "level": cfg.level,
        "rejection_rate": float((draws[:, 1] < cfg.level).mean()),
        "mean_beta_hat": float(draws[:, 2].mean()),
    }


_register("ivx-null", ("wald", "pvalue", "beta_hat"), _ivx_rep, _ivx_summarize)


def _supwald_setup(cfg):
    trim = cfg.param("trim", (0.15, 0.85))
    table = nbb_sup_mc(p=1, trim=(float(trim[0]), float(trim[1])),
                       reps=int(cfg.param("nbb_reps", 50000)),
                       rng=_aux_rng(cfg), grid=int(cfg.param("nbb_grid", 1000)))
    return {"q95_nbb": table.quantile(0.95), "table": table}


def _supwald_rep(cfg, ctx, r):
    n = int(cfg.param("n", 2000))
    trim = cfg.param("trim", (0.15, 0.85))
    spec = SystemSpec(beta=(float(cfg.param("beta", 0.25)),),
                      lur=(LurSpec(c=float(cfg.param("c", -5.0)),
                                   gamma=float(cfg.param("gamma", 0.75))),),
                      intercept=float(cfg.param("intercept", 0.0)),
                      sigma_ue=((1.0, float(cfg.param("corr", 0.5))),
                                (float(cfg.param("corr", 0.5)), 1.0)))
    y, x = simulate_predictive_system(spec, n, _rep_rng(cfg, r))
    res = sup_wald(y, x, trim=(float(trim[0]), float(trim[1])))
    return (res.stat, res.pi_star)


def _supwald_summarize(cfg, ctx, draws):
    q95_emp = float(np.quantile(draws[:, 0], 0.95))
    q95_nbb = ctx["q95_nbb"]
    return {
        "n": int(cfg.param("n", 2000)),
        "c": float(cfg.param("c", -5.0)),
        "gamma": float(cfg.param("gamma", 0.75)),
        "q95_empirical": q95_emp,
        "q95_limit": q95_nbb,
        "rel_diff": float(abs(q95_emp - q95_nbb) / q95_nbb),
        "rejection_rate": float((draws[:, 0] > q95_nbb).mean()),
    }


_register("supwald-nbb", ("sup_wald", "pi_star"), _supwald_rep,
          _supwald_summarize, setup=_supwald_setup)


def _fixed_wald_rep(cfg, ctx, r):
    n = int(cfg.param("n", 1000))
    pi0 = float(cfg.param("pi0", 0.5))
    phi = float(cfg.param("phi_x", 0.5))
    beta = float(cfg.param("beta", 0.3))
    gen = _rep_rng(cfg, r).generator()
    x0 = float(gen.standard_normal()) / np.sqrt(1.0 - phi**2)
    x = simulate_lur_ar(LurSpec(c=(phi - 1.0) * n, gamma=1.0), n, rng=gen, x0=x0)
    u = gen.standard_normal(n - 1)
    y = np.concatenate([[0.0], 1.0 + beta * x[:-1] + u])
    res = split_wald(y, x, pi0=pi0)
    return (res.stat,)


def _fixed_wald_summarize(cfg, ctx, draws):
    dof = 1
    q95 = float(np.quantile(draws[:, 0], 0.95))
    chi2_q95 = float(stats.chi2.ppf(0.95, dof))
    return {
        "n": int(cfg.param("n", 1000)),
        "pi0": float(cfg.param("pi0", 0.5)),
        "q95_empirical": q95,
        "q95_chi2": chi2_q95,
        "rel_err": float(abs(q95 - chi2_q95) / chi2_q95),
        "rejection_rate": float((draws[:, 0] > chi2_q95).mean()),
    }


_register("fixed-wald", ("wald",), _fixed_wald_rep, _fixed_wald_summarize)


def _nethac_setup(cfg):
    n_nodes = int(cfg.param("n_nodes", 200))
    w1 = float(cfg.param("w1", 0.1))
    g = cycle_graph(n_nodes)
    dist = graph_distance(g)
    # on a cycle the MA(1-in-distance) mean has long-run variance
    # (sum of coefficients)^2 by translation invariance
    true_lrv = (1.0 + 2.0 * w1) ** 2
    return {"graph": g, "dist": dist, "true_lrv": true_lrv}


def _nethac_rep(cfg, ctx, r):
    w1 = float(cfg.param("w1", 0.1))
    bw = float(cfg.param("bandwidth", 3.0))
    bw_low = float(cfg.param("low_bandwidth", 0.5))
    family = str(cfg.param("family", "bartlett"))
    g, dist = ctx["graph"], ctx["dist"]
    n = g.n
    y = simulate_graph_ma(g, (1.0, w1), _rep_rng(cfg, r), dist=dist)
    ybar = float(y.mean())
    v_full = float(network_hac(g, y, kernel=KernelSpec(family, bw), dist=dist)[0, 0])
    v_low = float(network_hac(g, y, kernel=KernelSpec(family, bw_low), dist=dist)[0, 0])
    crit = stats.norm.ppf(1.0 - cfg.level / 2.0)
    cover_full = abs(ybar) <= crit * np.sqrt(max(v_full, 0.0) / n)
    cover_low = abs(ybar) <= crit * np.sqrt(max(v_low, 0.0) / n)
    return (ybar, v_full, v_low, int(cover_full), int(cover_low))


def _nethac_summarize(cfg, ctx, draws):
    return {
        "n_nodes": int(cfg.param("n_nodes", 200)),
        "w1": float(cfg.param("w1", 0.1)),
        "bandwidth": float(cfg.param("bandwidth", 3.0)),
        "low_bandwidth": float(cfg.param("low_bandwidth", 0.5)),
        "level": cfg.level,
        "true_lrv": ctx["true_lrv"],
        "mean_v": float(draws[:, 1].mean()),
        "coverage": float(draws[:, 3].mean()),
        "coverage_low_bw": float(draws[:, 4].mean()),
    }


_register("nethac-coverage", ("ybar", "v_hac", "v_hac_low", "cover", "cover_low"),
          _nethac_rep, _nethac_summarize, setup=_nethac_setup)


def _urboot_setup(cfg):
    n = int(cfg.param("n", 1000))
    cv_reps = int(cfg.param("cv_reps", 20000))
    tables = df_limit_mc(n, deterministic="none", reps=cv_reps, rng=_aux_rng(cfg))
    return {"q05_limit": tables.coef.quantile(0.05)}


def _urboot_rep(cfg, ctx, r):
    n = int(cfg.param("n", 1000))
    B = int(cfg.param("B", 2000))
    block = int(cfg.param("block", 10))
    gen = _rep_rng(cfg, r).generator()
    y = np.cumsum(gen.standard_normal(n))
    res = residual_unitroot_bootstrap(y, B=B, rng=gen,
                                      block=BlockSpec(length=block))
    return (float(np.quantile(res.stats, 0.05)), float(res.observed))


def _urboot_summarize(cfg, ctx, draws):
    mean_q05 = float(draws[:, 0].mean())
    q05_limit = ctx["q05_limit"]
    return {
        "n": int(cfg.param("n", 1000)),
        "B": int(cfg.param("B", 2000)),
        "block": int(cfg.param("block", 10)),
        "mean_q05_boot": mean_q05,
        "q05_limit": q05_limit,
        "rel_err": float(abs(mean_q05 - q05_limit) / abs(q05_limit)),
    }


_register("unitroot-boot", ("q05_boot", "observed"), _urboot_rep,
          _urboot_summarize, setup=_urboot_setup)


def _garch_rep(cfg, ctx, r):
    spec = GarchSpec(omega=float(cfg.param("omega", 0.1)),
                     alpha=float(cfg.param("alpha", 0.1)),
                     beta=float(cfg.param("beta", 0.8)))
    n = int(cfg.param("n", 20000))
    y, _ = simulate_garch(spec, n, _rep_rng(cfg, r),
                          burn=int(cfg.param("burn", 500)))
    fit = garch_qmle(y)
    err = np.array([fit.spec.omega - spec.omega, fit.spec.alpha - spec.alpha,
                    fit.spec.beta - spec.beta])
    return (fit.spec.omega, fit.spec.alpha, fit.spec.beta,
            float(np.max(np.abs(err))), float(fit.sigma2.mean()),
            int(fit.converged))


def _garch_summarize(cfg, ctx, draws):
    spec = GarchSpec(omega=float(cfg.param("omega", 0.1)),
                     alpha=float(cfg.param("alpha", 0.1)),
                     beta=float(cfg.param("beta", 0.8)))
    var_true = spec.unconditional_variance
    mean_filter = float(draws[:, 4].mean())
    return {
        "n": int(cfg.param("n", 20000)),
        "omega": spec.omega,
        "alpha": spec.alpha,
        "beta": spec.beta,
        "median_max_abs_err": float(np.median(draws[:, 3])),
        "mean_filter_var": mean_filter,
        "var_true": var_true,
        "filter_rel_err": float(abs(mean_filter - var_true) / var_true),
        "frac_converged": float(draws[:, 5].mean()),
    }


_register("garch-recovery",
          ("omega_hat", "alpha_hat", "beta_hat", "max_abs_err",
           "filter_mean", "converged"),
          _garch_rep, _garch_summarize)


def _mp_rep(cfg, ctx, r):
    n = int(cfg.param("n", 4000))
    gamma = float(cfg.param("gamma", 0.25))
    p = int(round(gamma * n))
    res = sample_cov_spectrum(n, p, _rep_rng(cfg, r))
    return (res.lambda_min, res.lambda_max, abs(res.trace - res.trace_gram))


def _mp_summarize(cfg, ctx, draws):
    n = int(cfg.param("n", 4000))
    gamma = float(cfg.param("gamma", 0.25))
    lo, hi = mp_support(int(round(gamma * n)) / n)
    med_min = float(np.median(draws[:, 0]))
    med_max = float(np.median(draws[:, 1]))
    return {
        "n": n,
        "gamma": gamma,
        "median_lambda_min": med_min,
        "median_lambda_max": med_max,
        "edge_lower": lo,
        "edge_upper": hi,
        "err_min": float(abs(med_min - lo)),
        "err_max": float(abs(med_max - hi)),
        "max_trace_gap": float(draws[:, 2].max()),
    }


_register("mp-edges", ("lambda_min", "lambda_max", "trace_gap"), _mp_rep,
          _mp_summarize)


def _nested_rep(cfg, ctx, r):
    n = int(cfg.param("n", 1000))
    beta = cfg.param("beta", (0.1, 0.1, -0.05))
    c = cfg.param("c", (-2.0, -5.0, -10.0))
    v_ar = cfg.param("v_ar", (0.28, 0.32, -0.14))
    q = int(cfg.param("n_small", 1))
    k0 = int(cfg.param("k0", n // 4))
    spec = SystemSpec(beta=tuple(float(b) for b in beta),
                      lur=tuple(LurSpec(c=float(ci), gamma=1.0) for ci in c),
                      intercept=float(cfg.param("intercept", 0.0)),
                      v_ar=tuple(float(a) for a in v_ar))
    y, x = simulate_predictive_system(spec, n, _rep_rng(cfg, r))
    res = nested_forecast_test(y, x[:, :q], x[:, q:], k0=k0)
    return (res.stat, int(res.stat > 0))


def _nested_summarize(cfg, ctx, draws):
    return {
        "n": int(cfg.param("n", 1000)),
        "n_small": int(cfg.param("n_small", 1)),
        "mean_stat": float(draws[:, 0].mean()),
        "median_stat": float(np.median(draws[:, 0])),
        "frac_positive": float(draws[:, 1].mean()),
    }


_register("nested-forecast", ("t_n", "positive"), _nested_rep,
          _nested_summarize)
