"""Deterministic and randomized sweeps pitting measured spectra against bounds.

Each trial draws its randomness from a stream keyed by (seed, trial_index),
so results are byte-identical across runs and independent of the degree of
parallelism.  Records serialize to CSV (12 significant digits, wall time
excluded so repeated runs are byte-identical) and to a JSON report.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import bounds as bnd
from .core_matrix import (
    ComplexDense,
    PerturbationMap,
    build_figure1,
    build_perturbed_dft_freq,
    build_vandermonde,
    rect_lattice_points,
)
from .exp_systems import clump_decompose, separation
from .spectral import (
    CROSSOVER_DIM,
    METHOD_FULL,
    METHOD_ITERATIVE,
    UnconvergedError,
    extreme_singular_values,
    svd_values,
)

__all__ = [
    "SweepConfig",
    "SweepRecord",
    "figure1_sweep",
    "freq_stability_sweep",
    "node_stability_sweep",
    "wellsep_sweep",
    "benchmark_comparison",
    "clump_experiment",
    "fit_loglog_slope",
    "write_csv",
    "write_report",
    "records_to_csv",
]

VIOLATION_SLACK = 1e-9


@dataclass
class SweepConfig:
    seed: int = 0
    trials: int = 1
    size_grid: tuple = ()
    ell_grid: tuple = ()
    dimensions: int = 1
    crossover: int = CROSSOVER_DIM
    slack: float = VIOLATION_SLACK
    output_path: str | None = None
    workers: int | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")

    def effective_workers(self) -> int:
        if self.workers is not None:
            return max(1, self.workers)
        env = os.environ.get("FOURSTAB_THREADS", "")
        if env.strip():
            return max(1, int(env))
        return 1


@dataclass
class SweepRecord:
    experiment: str
    params: dict
    measured: dict
    bounds: dict
    violations: dict
    wall_time_s: float = 0.0
    artifacts: dict = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return any(self.violations.values())

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "params": self.params,
            "measured": self.measured,
            "bounds": self.bounds,
            "violations": self.violations,
            "wall_time_s": self.wall_time_s,
            "artifacts": self.artifacts,
        }


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def records_to_csv(records: Sequence[SweepRecord]) -> str:
    """CSV text: params, measured, bounds and violation columns, no wall time."""
    if not records:
        return "\n"
    first = records[0]
    header = (
        list(first.params)
        + list(first.measured)
        + list(first.bounds)
        + [f"violation_{k}" for k in first.violations]
    )
    lines = [",".join(header)]
    for rec in records:
        cells = (
            [_fmt(rec.params[k]) for k in first.params]
            + [_fmt(rec.measured[k]) for k in first.measured]
            + [_fmt(rec.bounds[k]) for k in first.bounds]
            + [_fmt(rec.violations[k]) for k in first.violations]
        )
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_csv(records: Sequence[SweepRecord], path: str | Path) -> None:
    Path(path).write_text(records_to_csv(records))


def write_report(
    cfg: SweepConfig, records: Sequence[SweepRecord], path: str | Path, wall_time_s: float
) -> None:
    doc = {
        "config": {k: (list(v) if isinstance(v, tuple) else v) for k, v in vars(cfg).items()},
        "records": [r.to_dict() for r in records],
        "violations": sum(1 for r in records if r.violated),
        "wall_time_s": wall_time_s,
    }
    Path(path).write_text(json.dumps(doc, indent=2))


def _trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(trial_index)])


def _run_indexed(fn: Callable[[int], SweepRecord], count: int, cfg: SweepConfig) -> list[SweepRecord]:
    workers = cfg.effective_workers()
    if workers <= 1 or count <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(count)))


def _dump_violation(matrix: ComplexDense, cfg: SweepConfig, tag: str) -> str:
    base = Path(cfg.output_path) if cfg.output_path else Path("violation")
    path = base.with_name(base.name + f".violation-{tag}.json")
    path.write_text(matrix.to_json())
    return str(path)


def _maybe_write(cfg: SweepConfig, records: list[SweepRecord], started: float) -> None:
    if cfg.output_path:
        out = Path(cfg.output_path)
        write_csv(records, out)
        write_report(cfg, records, out.with_suffix(out.suffix + ".report.json"), time.perf_counter() - started)


def figure1_sweep(n_list: Sequence[int], cfg: SweepConfig) -> list[SweepRecord]:
    """Condition number of the sign-perturbed DFT family over odd sizes."""
    sizes = [int(n) for n in n_list]
    for n in sizes:
        if n < 3 or n % 2 == 0:
            raise ValueError(f"sizes must be odd integers >= 3, got {n}")
    started = time.perf_counter()

    def one(i: int) -> SweepRecord:
        n = sizes[i]
        t0 = time.perf_counter()
        mat = build_figure1(n)
        if n <= cfg.crossover:
            summary = svd_values(mat)
            smax, smin, method = summary.sigma_max, summary.sigma_min, METHOD_FULL
        else:
            try:
                smax, smin = extreme_singular_values(mat)
            except UnconvergedError as exc:
                raise UnconvergedError(f"size n={n}: {exc}", exc.best_estimate, exc.iterations)
            method = METHOD_ITERATIVE
        kappa = smax / smin if smin > 0 else math.inf
        return SweepRecord(
            experiment="figure1",
            params={"n": n, "method": method},
            measured={"sigma_min": smin, "sigma_max": smax, "kappa": kappa},
            bounds={},
            violations={},
            wall_time_s=time.perf_counter() - t0,
        )

    records = _run_indexed(one, len(sizes), cfg)
    _maybe_write(cfg, records, started)
    return records


def freq_stability_sweep(
    m: Sequence[int], ell_grid: Sequence[float], rank_one: bool, cfg: SweepConfig
) -> list[SweepRecord]:
    """Random frequency perturbations of the DFT versus the closed-form bounds.

    Each trial draws eps uniformly in [-ell, ell] per component with one
    component forced to magnitude exactly ell, so the sup norm sits on the
    hypothesis boundary.
    """
    dims = [int(x) for x in m]
    ells = [float(e) for e in ell_grid]
    if not ells:
        raise ValueError("ell grid must be nonempty")
    for e in ells:
        if not 0.0 <= e < 0.25:
            raise ValueError(f"perturbation sizes must lie in [0, 1/4), got {e}")
    lattice = rect_lattice_points(dims).astype(int)
    d = len(dims)
    started = time.perf_counter()
    jobs = [(gi, t) for gi in range(len(ells)) for t in range(cfg.trials)]

    def one(i: int) -> SweepRecord:
        gi, trial = jobs[i]
        ell = ells[gi]
        t0 = time.perf_counter()
        rng = _trial_rng(cfg.seed, i)
        if rank_one:
            tables = []
            for mk in dims:
                tables.append({k: float(rng.uniform(-ell, ell)) if ell > 0 else 0.0 for k in range(mk)})
            axis = int(rng.integers(d))
            pos = int(rng.integers(dims[axis]))
            sign = 1.0 if rng.random() < 0.5 else -1.0
            tables[axis][pos] = sign * ell
            eps = PerturbationMap.rank_one(tables)
        else:
            vals = rng.uniform(-ell, ell, size=(len(lattice), d)) if ell > 0 else np.zeros((len(lattice), d))
            pos = int(rng.integers(len(lattice)))
            axis = int(rng.integers(d))
            sign = 1.0 if rng.random() < 0.5 else -1.0
            vals[pos, axis] = sign * ell
            eps = PerturbationMap.general({tuple(idx): vals[k] for k, idx in enumerate(lattice)})
        mat = build_perturbed_dft_freq(dims, eps)
        summary = svd_values(mat)
        report = bnd.dft_freq_bounds(dims, ell, rank_one)
        v_low = summary.sigma_min < report.sigma_min_lower - cfg.slack
        v_up = summary.sigma_max > report.sigma_max_upper + cfg.slack
        rec = SweepRecord(
            experiment="freq_stability",
            params={"m": "x".join(map(str, dims)), "ell": ell, "trial": trial, "rank_one": rank_one},
            measured={"sigma_min": summary.sigma_min, "sigma_max": summary.sigma_max},
            bounds={"sigma_min_lower": report.sigma_min_lower, "sigma_max_upper": report.sigma_max_upper},
            violations={"lower": bool(v_low), "upper": bool(v_up)},
            wall_time_s=time.perf_counter() - t0,
        )
        if rec.violated:
            rec.artifacts["matrix_dump"] = _dump_violation(mat, cfg, f"freq-{i}")
        return rec

    records = _run_indexed(one, len(jobs), cfg)
    _maybe_write(cfg, records, started)
    return records


def _jittered_nodes(rng: np.random.Generator, count: int, amplitude: float) -> np.ndarray:
    offset = rng.random()
    return np.mod((np.arange(count) + offset + amplitude * rng.uniform(-1, 1, count)) / count, 1.0)


def node_stability_sweep(
    L: int, n: int, ell_grid: Sequence[float], cfg: SweepConfig
) -> list[SweepRecord]:
    """Random node perturbations u_k -> u_k + delta_k / L of a Vandermonde matrix.

    Base nodes are drawn well separated (sep >= 2/L); trials where the
    applicability gate C(ell) < sigma_r/sigma_1 fails are recorded as not
    applicable, not as violations.
    """
    ells = [float(e) for e in ell_grid]
    if not ells:
        raise ValueError("ell grid must be nonempty")
    if n < 2 or L < n:
        raise ValueError(f"need 2 <= n <= L, got n={n}, L={L}")
    target_sep = 2.0 / L
    amplitude = max(0.02, 0.4 * (1.0 - n * target_sep))
    started = time.perf_counter()
    jobs = [(gi, t) for gi in range(len(ells)) for t in range(cfg.trials)]

    def one(i: int) -> SweepRecord:
        gi, trial = jobs[i]
        ell = ells[gi]
        t0 = time.perf_counter()
        rng = _trial_rng(cfg.seed, i)
        for _ in range(200):
            base = _jittered_nodes(rng, n, amplitude)
            if separation(base.tolist()) >= target_sep:
                break
        else:
            raise RuntimeError(f"failed to draw nodes with separation >= {target_sep}")
        v = build_vandermonde(L, base)
        s = np.linalg.svd(v.data, compute_uv=False)
        sigma_1, sigma_r = float(s[0]), float(s[min(L, n) - 1])
        report = bnd.vandermonde_node_bounds(sigma_r, sigma_1, ell)
        params = {"L": L, "n": n, "ell": ell, "trial": trial, "applicable": report.applicable}
        if not report.applicable:
            return SweepRecord(
                experiment="node_stability",
                params=params,
                measured={"sigma_r": sigma_r, "sigma_1": sigma_1, "sigma_r_pert": math.nan, "sigma_1_pert": math.nan},
                bounds={"sigma_min_lower": math.nan, "sigma_max_upper": math.nan},
                violations={"lower": False, "upper": False},
                wall_time_s=time.perf_counter() - t0,
            )
        delta = rng.uniform(-ell, ell, n) if ell > 0 else np.zeros(n)
        pos = int(rng.integers(n))
        delta[pos] = (1.0 if rng.random() < 0.5 else -1.0) * ell
        vp = build_vandermonde(L, base + delta / L)
        sp = np.linalg.svd(vp.data, compute_uv=False)
        sig1p, sigrp = float(sp[0]), float(sp[min(L, n) - 1])
        v_low = sigrp < report.sigma_min_lower - cfg.slack
        v_up = sig1p > report.sigma_max_upper + cfg.slack
        rec = SweepRecord(
            experiment="node_stability",
            params=params,
            measured={"sigma_r": sigma_r, "sigma_1": sigma_1, "sigma_r_pert": sigrp, "sigma_1_pert": sig1p},
            bounds={"sigma_min_lower": report.sigma_min_lower, "sigma_max_upper": report.sigma_max_upper},
            violations={"lower": bool(v_low), "upper": bool(v_up)},
            wall_time_s=time.perf_counter() - t0,
        )
        if rec.violated:
            rec.artifacts["matrix_dump"] = _dump_violation(vp, cfg, f"node-{i}")
        return rec

    records = _run_indexed(one, len(jobs), cfg)
    _maybe_write(cfg, records, started)
    return records


def wellsep_sweep(L_grid: Sequence[int], cfg: SweepConfig) -> list[SweepRecord]:
    """Random well-separated node sets versus the two-sided squared bound."""
    sizes = [int(x) for x in L_grid]
    if not sizes:
        raise ValueError("L grid must be nonempty")
    started = time.perf_counter()
    jobs = [(gi, t) for gi in range(len(sizes)) for t in range(cfg.trials)]

    def one(i: int) -> SweepRecord:
        gi, trial = jobs[i]
        L = sizes[gi]
        t0 = time.perf_counter()
        rng = _trial_rng(cfg.seed, i)
        n = int(rng.integers(2, max(3, L // 2 + 1)))
        amplitude = 0.4 * (1.0 - n / L)
        for _ in range(200):
            nodes = _jittered_nodes(rng, n, amplitude)
            sep = separation(nodes.tolist())
            if sep > 1.0 / L:
                break
        else:
            raise RuntimeError(f"failed to draw nodes with separation > 1/{L}")
        v = build_vandermonde(L, nodes)
        s = np.linalg.svd(v.data, compute_uv=False)
        smin_sq, smax_sq = float(s[-1] ** 2), float(s[0] ** 2)
        report = bnd.wellsep_bounds(L, sep)
        v_low = smin_sq < report.sigma_min_lower - cfg.slack
        v_up = smax_sq > report.sigma_max_upper + cfg.slack
        rec = SweepRecord(
            experiment="wellsep",
            params={"L": L, "n": n, "trial": trial, "sep": sep},
            measured={"sigma_min_sq": smin_sq, "sigma_max_sq": smax_sq},
            bounds={"lower_sq": report.sigma_min_lower, "upper_sq": report.sigma_max_upper},
            violations={"lower": bool(v_low), "upper": bool(v_up)},
            wall_time_s=time.perf_counter() - t0,
        )
        if rec.violated:
            rec.artifacts["matrix_dump"] = _dump_violation(v, cfg, f"wellsep-{i}")
        return rec

    records = _run_indexed(one, len(jobs), cfg)
    _maybe_write(cfg, records, started)
    return records


def _bisect(fn: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12) -> float:
    flo = fn(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol:
            return mid
        if (fn(mid) > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def benchmark_comparison(m: Sequence[int], cfg: SweepConfig | None = None) -> dict:
    """Largest allowable perturbations guaranteeing sigma_min >= sqrt(P)/2.

    Compares the additive Frobenius-type estimate (allowable eps shrinks
    like 1/sqrt(P)) with the thresholds ell solving 1 - D(ell) = 1/2 and
    (1 - C(ell))^d = 1/2, which are size independent.
    """
    dims = [int(x) for x in m]
    d = len(dims)
    size = math.prod(dims)
    eps_weyl = 1.0 / (2.0 * math.pi * d * math.sqrt(size))
    ell_general = _bisect(lambda t: (1.0 - bnd.kadec_D(t, d)) - 0.5, 0.0, 0.25)
    ell_rank_one = _bisect(lambda t: (1.0 - bnd.kadec_C(t)) ** d - 0.5, 0.0, 0.25)
    report = {
        "m": dims,
        "d": d,
        "matrix_size": size,
        "weyl_eps_for_half": eps_weyl,
        "ell_general_for_half": ell_general,
        "ell_rank_one_for_half": ell_rank_one,
    }
    if cfg is not None and cfg.output_path:
        lines = ["method,allowable_perturbation"]
        lines.append(f"weyl,{_fmt(eps_weyl)}")
        lines.append(f"kadec_general,{_fmt(ell_general)}")
        lines.append(f"kadec_rank_one,{_fmt(ell_rank_one)}")
        Path(cfg.output_path).write_text("\n".join(lines) + "\n")
    return report


def fit_loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log(y) against log(x)."""
    lx = np.log(np.asarray(xs, dtype=float))
    ly = np.log(np.asarray(ys, dtype=float))
    return float(np.polyfit(lx, ly, 1)[0])


def clump_experiment(
    L: int,
    N: int,
    alpha_grid: Sequence[float],
    lam: int,
    constants: tuple[float, float] = (1.0, 1.0),
    cfg: SweepConfig | None = None,
) -> list[SweepRecord]:
    """Clustered node sets: sigma_N scaling in the intra-cluster spacing.

    Nodes form N/lam clusters of lam points spaced alpha apart, cluster
    centers roughly equispaced.  Only the upper bound sqrt(L(lam + 1/3))
    counts as a violation; the lower bound depends on configured constants
    and is recorded as data.
    """
    cfg = cfg or SweepConfig()
    alphas = [float(a) for a in alpha_grid]
    if not alphas:
        raise ValueError("alpha grid must be nonempty")
    if L < 6 * N:
        raise ValueError(f"requires L >= 6N, got L={L}, N={N}")
    if lam < 1 or N % lam != 0:
        raise ValueError(f"cluster size {lam} must divide the node count {N}")
    r = N // lam
    for alpha in alphas:
        if not 0.0 < alpha < 1.0 / L:
            raise ValueError(f"alpha must lie in (0, 1/L): got {alpha}, 1/L = {1.0 / L}")
        if 1.0 / r - (lam - 1) * alpha - 0.2 / r < 3.0 * lam / L:
            raise ValueError(
                f"clusters cannot be separated by 3*lambda/L with r={r}, alpha={alpha}"
            )
    started = time.perf_counter()
    jobs = [(gi, t) for gi in range(len(alphas)) for t in range(cfg.trials)]

    def one(i: int) -> SweepRecord:
        gi, trial = jobs[i]
        alpha = alphas[gi]
        t0 = time.perf_counter()
        rng = _trial_rng(cfg.seed, i)
        centers = (np.arange(r) + rng.random() + 0.1 * rng.uniform(-1, 1, r)) / r
        nodes = np.mod(
            np.concatenate([c + alpha * np.arange(lam) for c in centers]), 1.0
        )
        dec = clump_decompose(nodes, L, lam)
        v = build_vandermonde(L, nodes)
        s = np.linalg.svd(v.data, compute_uv=False)
        sigma_n, sigma_1 = float(s[N - 1]), float(s[0])
        report = bnd.clump_bounds(L, N, alpha, lam, *constants)
        v_up = sigma_1 > report.sigma_max_upper + cfg.slack
        rec = SweepRecord(
            experiment="clump",
            params={
                "L": L,
                "N": N,
                "alpha": alpha,
                "lambda": lam,
                "trial": trial,
                "hypotheses_ok": dec.hypotheses_ok,
            },
            measured={"sigma_N": sigma_n, "sigma_1": sigma_1},
            bounds={
                "sigma_min_lower": report.sigma_min_lower,
                "sigma_max_upper": report.sigma_max_upper,
            },
            violations={"upper": bool(v_up)},
            wall_time_s=time.perf_counter() - t0,
        )
        if rec.violated:
            rec.artifacts["matrix_dump"] = _dump_violation(v, cfg, f"clump-{i}")
        return rec

    records = _run_indexed(one, len(jobs), cfg)
    _maybe_write(cfg, records, started)
    return records
