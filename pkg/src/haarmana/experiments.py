"""Figure-reproduction experiments, verification suite, prediction tables, benchmarks.

Every experiment writes a CSV (floats at 17 significant digits) and a JSON
sidecar next to it. Grid point ``g`` draws its samples from stream indices
``g * STREAM_BLOCK + i`` so points never share randomness and results do not
depend on the thread count.
"""

from __future__ import annotations

import csv
import json
import math
import os
import subprocess
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import predictions as pred
from .algebra import InvalidDimensionError, check_dim, verify_algebra
from .design_probe import VARIANCE_ASSUMPTION, chebyshev_coeffs
from .ensembles import EnsembleSpec, SeededStream, batch_statistics, sample_haar_pure, sample_reduced
from .wigner import PATHS, wigner_values

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "FIGURES",
    "run_figure",
    "run_verify",
    "run_predict",
    "run_bench",
    "plot_template",
    "build_id",
]

STREAM_BLOCK = 2 ** 32
ENTROPY_BIN = 0.05
MIN_BIN_COUNT = 2
DEFAULT_SEED = 20170101


class ConfigError(ValueError):
    """Invalid experiment configuration (bad dims, sizes or output path)."""


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return f"{float(x):.17g}"


def _write_csv(path: Path, columns: Sequence[str], rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row.get(c)) for c in columns])


def build_id() -> str:
    here = Path(__file__).resolve().parent
    try:
        out = subprocess.run(["git", "describe", "--always", "--dirty", "--tags"], cwd=here,
                             capture_output=True, text=True, timeout=10)
    except (OSError, subprocess.SubprocessError):
        return "unknown"
    return out.stdout.strip() or "unknown"


def _metadata_path(out: Path) -> Path:
    return out.with_suffix(".json")


def _check_writable(out: Path) -> None:
    parent = out.resolve().parent
    if not parent.is_dir() or not os.access(parent, os.W_OK):
        raise ConfigError(f"output path {out} is not writable")
    if out.exists() and out.is_dir():
        raise ConfigError(f"output path {out} is a directory")


def _write_metadata(out: Path, meta: dict) -> None:
    with open(_metadata_path(out), "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _mean_stderr(x: np.ndarray) -> tuple[float, float]:
    n = len(x)
    if n < 2:
        return float(x.mean()), math.nan
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(n))


def _delta_grid(top: float, step: float, start: float = 0.0) -> list[float]:
    # integer multiples of the step avoid drift; the endpoint ln D is appended
    n = int(math.floor((top - start) / step + 1e-9))
    grid = [start + k * step for k in range(n + 1)]
    if top - grid[-1] > 1e-9:
        grid.append(top)
    return grid


@dataclass
class ExperimentConfig:
    experiment: str
    n_samples: int
    master_seed: int = DEFAULT_SEED
    output_path: str | os.PathLike = "out.csv"
    threads: int = 1
    dims: list[int] | None = None
    knobs: list[float] | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.experiment not in FIGURES:
            raise ConfigError(f"unknown experiment {self.experiment!r}; choose from {sorted(FIGURES)}")
        if isinstance(self.n_samples, bool) or int(self.n_samples) != self.n_samples or self.n_samples < 1:
            raise ConfigError(f"n_samples must be a positive integer, got {self.n_samples!r}")
        if not 0 <= int(self.master_seed) < 2 ** 64:
            raise ConfigError("master_seed must fit in 64 unsigned bits")
        if self.threads < 1:
            raise ConfigError(f"threads must be >= 1, got {self.threads}")
        spec = FIGURES[self.experiment]
        if self.dims is None:
            self.dims = list(spec.default_dims)
        if self.knobs is None and spec.default_knobs is not None:
            self.knobs = list(spec.default_knobs)
        if not self.dims:
            raise ConfigError("dims must not be empty")
        for d in self.dims:
            try:
                check_dim(d)
            except InvalidDimensionError as exc:
                raise ConfigError(str(exc)) from exc
        self.dims = [int(d) for d in self.dims]


# ---------------------------------------------------------------- figures


def _fig_mixed_intro(cfg: ExperimentConfig) -> tuple[list[str], list[dict]]:
    """Simple mixtures at exact target deficits, mean mana against the Gaussian form."""
    step = float(cfg.extra.get("delta_step", 0.1))
    rows, g = [], 0
    for d in cfg.dims:
        for delta in _delta_grid(math.log(d), step):
            st = batch_statistics(EnsembleSpec("simple", d, delta), cfg.n_samples, cfg.master_seed,
                                  start=g * STREAM_BLOCK, threads=cfg.threads)
            g += 1
            m, se = _mean_stderr(st["mana"])
            pg = math.log(pred.gaussian_wigner_norm(delta))
            rows.append({"d": d, "delta": delta, "mean_mana": m, "stderr": se, "pred_gaussian": pg,
                         "deviation": m - pg, "mean_norm": float(st["wigner_norm"].mean()),
                         "n": cfg.n_samples})
    return ["d", "delta", "mean_mana", "stderr", "pred_gaussian", "deviation", "mean_norm", "n"], rows


def _fig_mixed_detail(cfg: ExperimentConfig) -> tuple[list[str], list[dict]]:
    """Raw per-sample (deficit, mana) rows for reduced states; binning is left downstream."""
    d_a = cfg.dims[0]
    rows = []
    for g, d_b in enumerate(int(k) for k in cfg.knobs):
        st = batch_statistics(EnsembleSpec("reduced", d_a, d_b), cfg.n_samples, cfg.master_seed,
                              start=g * STREAM_BLOCK, threads=cfg.threads)
        for i in range(cfg.n_samples):
            delta = float(st["delta"][i])
            rows.append({"d_a": d_a, "d_b": d_b, "sample_index": int(st["sample_index"][i]),
                         "delta": delta, "mana": float(st["mana"][i]),
                         "pred_gaussian": math.log(pred.gaussian_wigner_norm(max(delta, 0.0)))})
    return ["d_a", "d_b", "sample_index", "delta", "mana", "pred_gaussian"], rows


def _fig_mixed_var(cfg: ExperimentConfig) -> tuple[list[str], list[dict]]:
    """Wigner-norm spread of reduced states, grouped by realized deficit bin and by d_B."""
    d_a = cfg.dims[0]
    deltas, norms, rows = [], [], []
    for g, d_b in enumerate(int(k) for k in cfg.knobs):
        st = batch_statistics(EnsembleSpec("reduced", d_a, d_b), cfg.n_samples, cfg.master_seed,
                              start=g * STREAM_BLOCK, threads=cfg.threads)
        deltas.append(st["delta"])
        norms.append(st["wigner_norm"])
        dbar = min(max(pred.reduced_deficit(d_a, d_b), 0.0), math.log(d_a))
        rows.append({"group": "ancilla", "knob": d_b, "delta": float(st["delta"].mean()),
                     "std_norm": float(st["wigner_norm"].std(ddof=1)) if cfg.n_samples > 1 else math.nan,
                     "n": cfg.n_samples, "pred_std": math.sqrt(pred.gaussian_variance(d_a, dbar))})
    deltas = np.clip(np.concatenate(deltas), 0.0, math.log(d_a))
    norms = np.concatenate(norms)
    bins = np.floor(deltas / ENTROPY_BIN).astype(int)
    for b in np.unique(bins):
        sel = norms[bins == b]
        if len(sel) < MIN_BIN_COUNT:
            continue
        center = min((b + 0.5) * ENTROPY_BIN, math.log(d_a))
        rows.append({"group": "entropy_bin", "knob": None, "delta": center,
                     "std_norm": float(sel.std(ddof=1)), "n": len(sel),
                     "pred_std": math.sqrt(pred.gaussian_variance(d_a, center))})
    return ["group", "knob", "delta", "std_norm", "n", "pred_std"], rows


def _fig_exact_db(cfg: ExperimentConfig) -> tuple[list[str], list[dict]]:
    """Mean mana of reduced states versus d_B against the exact and Gaussian forms."""
    rows, g = [], 0
    for d_a in cfg.dims:
        for d_b in (int(k) for k in cfg.knobs):
            st = batch_statistics(EnsembleSpec("reduced", d_a, d_b), cfg.n_samples, cfg.master_seed,
                                  start=g * STREAM_BLOCK, threads=cfg.threads)
            g += 1
            m, se = _mean_stderr(st["mana"])
            exact = pred.exact_mixed_norm(pred.ExactMixedParams(d_a, d_b))
            delta = pred.reduced_deficit(d_a, d_b)
            rows.append({"d_a": d_a, "d_b": d_b, "delta": delta, "mean_mana": m, "stderr": se,
                         "pred_exact": math.log(exact),
                         "pred_gaussian": math.log(pred.gaussian_wigner_norm(max(delta, 0.0))),
                         "n": cfg.n_samples})
    return ["d_a", "d_b", "delta", "mean_mana", "stderr", "pred_exact", "pred_gaussian", "n"], rows


def _binned(ensemble: str, deltas: np.ndarray, manas: np.ndarray, top: float) -> list[dict]:
    bins = np.floor(np.clip(deltas, 0.0, top) / ENTROPY_BIN).astype(int)
    rows = []
    for b in np.unique(bins):
        mask = bins == b
        if mask.sum() < MIN_BIN_COUNT:
            continue
        m, se = _mean_stderr(manas[mask])
        center = (b + 0.5) * ENTROPY_BIN
        rows.append({"ensemble": ensemble, "delta": center, "mean_delta": float(deltas[mask].mean()),
                     "mean_mana": m, "stderr": se, "n": int(mask.sum()),
                     "pred_gaussian": math.log(pred.gaussian_wigner_norm(min(center, top)))})
    return rows


def _fig_ensembles(cfg: ExperimentConfig) -> tuple[list[str], list[dict]]:
    """Three ensembles on one qudit: exact-target mixtures, averaged projectors, reduced states.

    Ensemble 1 sits at the entropy-bin centers exactly; ensembles 2 and 3 are
    binned by their realized deficit.
    """
    d = cfg.dims[0]
    top = math.log(d)
    knobs = [int(k) for k in cfg.knobs]
    rows, g = [], 0
    for b in range(int(top / ENTROPY_BIN) + 1):
        center = min((b + 0.5) * ENTROPY_BIN, top)
        st = batch_statistics(EnsembleSpec("simple", d, center), cfg.n_samples, cfg.master_seed,
                              start=g * STREAM_BLOCK, threads=cfg.threads)
        g += 1
        m, se = _mean_stderr(st["mana"])
        rows.append({"ensemble": "simple", "delta": center, "mean_delta": center, "mean_mana": m,
                     "stderr": se, "n": cfg.n_samples,
                     "pred_gaussian": math.log(pred.gaussian_wigner_norm(center))})
    for kind in ("average", "reduced"):
        deltas, manas = [], []
        for k in knobs:
            st = batch_statistics(EnsembleSpec(kind, d, k), cfg.n_samples, cfg.master_seed,
                                  start=g * STREAM_BLOCK, threads=cfg.threads)
            g += 1
            deltas.append(st["delta"])
            manas.append(st["mana"])
        rows.extend(_binned(kind, np.concatenate(deltas), np.concatenate(manas), top))
    return ["ensemble", "delta", "mean_delta", "mean_mana", "stderr", "n", "pred_gaussian"], rows


def _pure_stats(cfg: ExperimentConfig, g: int, d: int) -> dict[str, np.ndarray]:
    return batch_statistics(EnsembleSpec("pure", d), cfg.n_samples, cfg.master_seed,
                            start=g * STREAM_BLOCK, threads=cfg.threads)


def _fig_pure_norm(cfg: ExperimentConfig) -> tuple[list[str], list[dict]]:
    rows = []
    for g, d in enumerate(cfg.dims):
        st = _pure_stats(cfg, g, d)
        m, se = _mean_stderr(st["wigner_norm"])
        rows.append({"d": d, "mean_norm": m, "stderr": se, "pred_exact": pred.exact_pure_norm(d),
                     "pred_gaussian": pred.gaussian_wigner_norm(math.log(d)), "n": cfg.n_samples})
    return ["d", "mean_norm", "stderr", "pred_exact", "pred_gaussian", "n"], rows


def _fig_pure_std(cfg: ExperimentConfig) -> tuple[list[str], list[dict]]:
    rows = []
    for g, d in enumerate(cfg.dims):
        st = _pure_stats(cfg, g, d)
        n = cfg.n_samples
        s = float(st["wigner_norm"].std(ddof=1)) if n > 1 else math.nan
        rows.append({"d": d, "std_norm": s, "stderr_std": s / math.sqrt(2 * (n - 1)) if n > 1 else math.nan,
                     "pred_gaussian": math.sqrt(pred.gaussian_variance(d, math.log(d))), "n": n})
    return ["d", "std_norm", "stderr_std", "pred_gaussian", "n"], rows


def _fig_pure_mana(cfg: ExperimentConfig) -> tuple[list[str], list[dict]]:
    rows = []
    for g, d in enumerate(cfg.dims):
        st = _pure_stats(cfg, g, d)
        m, se = _mean_stderr(st["mana"])
        ln_norm = math.log(float(st["wigner_norm"].mean()))
        rows.append({"d": d, "mean_mana": m, "stderr": se, "ln_mean_norm": ln_norm,
                     "deviation": ln_norm - m,
                     "pred_exact": math.log(pred.exact_pure_norm(d)),
                     "pred_gaussian": math.log(pred.gaussian_wigner_norm(math.log(d))),
                     "pred_quick": pred.mana_quick_estimate(1, d, 0.0), "n": cfg.n_samples})
    return ["d", "mean_mana", "stderr", "ln_mean_norm", "deviation", "pred_exact", "pred_gaussian",
            "pred_quick", "n"], rows


@dataclass(frozen=True)
class FigureSpec:
    runner: Callable[[ExperimentConfig], tuple[list[str], list[dict]]]
    default_dims: tuple[int, ...]
    default_samples: int
    default_knobs: tuple | None = None


_ODD_TO_27 = tuple(range(3, 28, 2))
_PRIMES_TO_31 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)

FIGURES: dict[str, FigureSpec] = {
    "fig_mixed_intro": FigureSpec(_fig_mixed_intro, (3, 5, 7, 9, 11, 13, 27), 1000),
    "fig_mixed_detail": FigureSpec(_fig_mixed_detail, (5,), 100, _PRIMES_TO_31),
    "fig_mixed_var": FigureSpec(_fig_mixed_var, (5,), 200, tuple(range(1, 41))),
    "fig_exact_db": FigureSpec(_fig_exact_db, (3, 5), 1000, tuple(range(1, 14))),
    "fig_ensembles": FigureSpec(_fig_ensembles, (11,), 300, tuple(range(2, 41))),
    "fig_pure_norm": FigureSpec(_fig_pure_norm, _ODD_TO_27, 10000),
    "fig_pure_std": FigureSpec(_fig_pure_std, _ODD_TO_27, 10000),
    "fig_pure_mana": FigureSpec(_fig_pure_mana, _ODD_TO_27, 10000),
}


def run_figure(cfg: ExperimentConfig) -> dict:
    """Run one figure experiment, write ``<out>.csv`` and ``<out>.json``; return the metadata."""
    out = Path(cfg.output_path)
    _check_writable(out)
    t0 = time.perf_counter()
    columns, rows = FIGURES[cfg.experiment].runner(cfg)
    elapsed = time.perf_counter() - t0
    _write_csv(out, columns, rows)
    meta = {
        "experiment": cfg.experiment,
        "seed": int(cfg.master_seed),
        "n_samples": int(cfg.n_samples),
        "dims": cfg.dims,
        "knobs": cfg.knobs,
        "build_id": build_id(),
        "elapsed_seconds": elapsed,
        "columns": columns,
        "variance_assumption": VARIANCE_ASSUMPTION,
    }
    _write_metadata(out, meta)
    return meta


# ---------------------------------------------------------------- verify


@dataclass
class Check:
    name: str
    value: float
    tol: float

    @property
    def ok(self) -> bool:
        return bool(self.value <= self.tol)

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name:<44s} {self.value:.3e} (tol {self.tol:.0e})"


def run_verify(*, dims: Sequence[int] = (3, 5, 7, 9, 15, 27, 31), perturb: bool = False,
               seed: int = DEFAULT_SEED, samples: int = 8) -> list[Check]:
    """Algebra, Wigner-constraint and prediction-consistency checks."""
    checks: list[Check] = []
    for i, d in enumerate(dims):
        rep = verify_algebra(d, perturb=perturb and i == 0)
        for name, v in rep.residuals.items():
            checks.append(Check(f"algebra d={d} {name}", v, rep.tolerances[name]))

    for g, d in enumerate(dims):
        psi = np.stack([sample_haar_pure(d, SeededStream(seed, g * STREAM_BLOCK + i)) for i in range(samples)])
        rho = np.stack([sample_reduced(d, 2, SeededStream(seed + 1, g * STREAM_BLOCK + i)) for i in range(samples)])
        for label, arr, pure in (("pure", psi, True), ("reduced", rho, False)):
            ws = {p: wigner_values(arr, pure=pure, path=p) for p in PATHS}
            w = ws["fft"]
            purity = 1.0 if pure else np.sum(np.abs(arr) ** 2, axis=(-1, -2))
            checks.append(Check(f"wigner d={d} {label} paths agree",
                                max(float(np.abs(ws[p] - w).max()) for p in PATHS), 1e-10))
            checks.append(Check(f"wigner d={d} {label} sum W = 1",
                                float(np.abs(w.sum(axis=(-1, -2)) - 1).max()), 1e-10))
            checks.append(Check(f"wigner d={d} {label} sum W^2 = Tr rho^2 / d",
                                float(np.abs((w ** 2).sum(axis=(-1, -2)) - purity / d).max()), 1e-10))
            mana = np.log(np.abs(w).sum(axis=(-1, -2)))
            bound = 0.5 * np.log(d * purity)
            checks.append(Check(f"wigner d={d} {label} mana <= Jensen bound",
                                float(max(0.0, (mana - bound).max())), 1e-10))

    for d_a in (3, 5, 7):
        for d_b in (1, 2, 5, 13):
            p = pred.ExactMixedParams(d_a, d_b)
            a, b = pred.exact_mixed_norm(p), pred.exact_mixed_norm_bracket(p)
            checks.append(Check(f"exact norm forms agree d_a={d_a} d_b={d_b}", abs(a - b) / a, 1e-12))
            checks.append(Check(f"exact moment normalized d_a={d_a} d_b={d_b}",
                                abs(pred.char_fn_moment(p, 0) - 1), 1e-12))
        checks.append(Check(f"pure limit d={d_a}",
                            abs(pred.exact_mixed_norm(pred.ExactMixedParams(d_a, 1)) - pred.exact_pure_norm(d_a)),
                            1e-12))
    grid = np.linspace(0, 4, 41)
    g_col = np.array([pred.gaussian_wigner_norm(x) for x in grid])
    checks.append(Check("gaussian norm monotone in delta", float(max(0.0, -np.diff(g_col).min())), 0.0))

    coeffs = chebyshev_coeffs(100).coeffs
    k = np.arange(1, 51)
    closed = 4 / np.pi * (-1.0) ** (k + 1) / (4 * k * k - 1)
    checks.append(Check("chebyshev coefficients vs closed form", float(np.abs(coeffs[2 * k] - closed).max()), 1e-8))
    return checks


# ---------------------------------------------------------------- predict


PREDICT_COLUMNS = pred.PREDICTION_COLUMNS + ["pred_mana_quick"]


def run_predict(out, *, d_a: int | None = None, d_bs: Sequence[int] | None = None,
                big_d: int | None = None, deltas: Sequence[float] | None = None) -> list[dict]:
    """Prediction table either over ``d_B`` at fixed ``d_A`` or over a deficit grid at fixed D."""
    out = Path(out)
    _check_writable(out)
    rows: list[dict] = []
    if d_a is not None:
        if big_d is not None or deltas is not None:
            raise ConfigError("give either d_a/d_b or big_d/delta grid, not both")
        try:
            check_dim(d_a)
        except InvalidDimensionError as exc:
            raise ConfigError(str(exc)) from exc
        if not d_bs or min(d_bs) < 1:
            raise ConfigError("d_b values must be positive integers")
        rows = pred.prediction_rows(d_a, d_bs)
        for row in rows:
            s2 = math.log(d_a) - min(max(row["delta"], 0.0), math.log(d_a))
            row["pred_mana_quick"] = pred.mana_quick_estimate(1, d_a, s2)
    elif big_d is not None:
        if big_d < 2 or not deltas:
            raise ConfigError("need big_d >= 2 and a nonempty delta grid")
        top = math.log(big_d)
        for delta in deltas:
            if not 0 <= delta <= top + 1e-12:
                raise ConfigError(f"delta={delta} outside [0, ln D = {top:.6g}]")
            delta = min(delta, top)
            rows.append({"d_a": big_d, "d_b": None, "delta": delta,
                         "pred_gaussian": pred.gaussian_wigner_norm(delta), "pred_exact": None,
                         "pred_variance": pred.gaussian_variance(big_d, delta),
                         "pred_mana_quick": pred.mana_quick_estimate(1, big_d, top - delta)})
    else:
        raise ConfigError("give d_a with d_b values, or big_d with a delta grid")
    _write_csv(out, PREDICT_COLUMNS, rows)
    return rows


# ---------------------------------------------------------------- bench


class MemoryBudgetError(ConfigError):
    pass


def _path_bytes(d: int, path: str) -> int:
    # peak complex buffers: one p-slice of point operators for the trace path
    return 16 * (d ** 3 if path == "trace" else 4 * d * d)


def run_bench(dims: Sequence[int], reps: int = 5, *, seed: int = DEFAULT_SEED,
              memory_budget_mb: float = 2048.0, trace_max_d: int = 81,
              out=None) -> list[dict]:
    """Median wall time of the three Wigner paths for one Haar density matrix per d.

    Every path is checked against the FFT result (to 1e-10) before it is timed.
    The trace path is skipped above ``trace_max_d`` (its time is left blank).
    """
    if reps < 1:
        raise ConfigError("reps must be >= 1")
    for d in dims:
        try:
            check_dim(d)
        except InvalidDimensionError as exc:
            raise ConfigError(str(exc)) from exc
        need = max(_path_bytes(d, p) for p in PATHS if p != "trace" or d <= trace_max_d)
        need += 16 * d * d
        if need > memory_budget_mb * 2 ** 20:
            raise MemoryBudgetError(f"d={d} needs ~{need / 2**20:.0f} MB, budget is {memory_budget_mb} MB")
    if out is not None:
        out = Path(out)
        _check_writable(out)

    # warm the compiled kernels so the first timing is not a JIT compile
    wigner_values(sample_reduced(3, 3, SeededStream(seed, 0)), path="direct")
    rows = []
    for g, d in enumerate(dims):
        rho = sample_reduced(d, 2, SeededStream(seed, g))
        ref = wigner_values(rho, path="fft")
        row = {"d": d, "reps": reps, "max_abs_diff": 0.0}
        for path in ("trace", "direct", "fft"):
            if path == "trace" and d > trace_max_d:
                row["trace_seconds"] = None
                continue
            diff = float(np.abs(wigner_values(rho, path=path) - ref).max())
            if diff > 1e-10:
                raise RuntimeError(f"path {path} disagrees with fft at d={d}: {diff:.3e}")
            row["max_abs_diff"] = max(row["max_abs_diff"], diff)
            times = []
            for _ in range(reps):
                t0 = time.perf_counter()
                wigner_values(rho, path=path)
                times.append(time.perf_counter() - t0)
            row[f"{path}_seconds"] = float(np.median(times))
        rows.append(row)
    if out is not None:
        _write_csv(out, ["d", "reps", "trace_seconds", "direct_seconds", "fft_seconds", "max_abs_diff"], rows)
    return rows


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


# ---------------------------------------------------------------- plotting helper


_TEMPLATE = '''"""Plot {csv_name}; edit freely."""
import csv
import matplotlib.pyplot as plt

with open({csv_path!r}, newline="", encoding="utf-8") as fh:
    rows = list(csv.DictReader(fh))

x_col, y_col, err_col, pred_cols = {x!r}, {y!r}, {err!r}, {preds!r}

def col(name):
    return [float(r[name]) if r[name] else float("nan") for r in rows]

fig, ax = plt.subplots()
if err_col:
    ax.errorbar(col(x_col), col(y_col), yerr=col(err_col), fmt="o", ms=3, label=y_col)
else:
    ax.plot(col(x_col), col(y_col), "o", ms=3, label=y_col)
for name in pred_cols:
    ax.plot(col(x_col), col(name), "-", label=name)
ax.set_xlabel(x_col)
ax.set_ylabel(y_col)
ax.legend()
fig.savefig({png!r}, dpi=150)
'''


def plot_template(csv_path) -> str:
    """A matplotlib script plotting the first measured column of a figure CSV."""
    csv_path = Path(csv_path)
    with open(csv_path, encoding="utf-8", newline="") as fh:
        header = next(csv.reader(fh))
    preds = [c for c in header if c.startswith("pred_")]
    y = next((c for c in ("mean_mana", "mean_norm", "std_norm", "mana") if c in header), header[1])
    x = next((c for c in ("delta", "d_b", "d") if c in header), header[0])
    err = next((c for c in ("stderr", "stderr_std") if c in header), "")
    return _TEMPLATE.format(csv_name=csv_path.name, csv_path=str(csv_path), x=x, y=y, err=err,
                            preds=preds, png=str(csv_path.with_suffix(".png")))
