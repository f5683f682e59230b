"""Benchmark orchestration: run a configured pipeline over seeds and report.

A run takes a dataset (CSV file, synthetic blob spec, or a synthetic
advertiser directory), executes one method per seed, and aggregates
accuracies plus method-specific diagnostics into an :class:`EvalReport`.
Reports are written twice: a structured JSON tree and an aligned plain-text
table.  Identical configurations produce byte-identical reports.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import io as rio
from .admm import solve_consensus
from .baselines import kc_baseline, l2_consensus
from .ensemble import build_ensemble, corrupt_ensemble, kmeans_labels
from .ks import EmpiricalCdf, component_count, pairwise_similarity, similarity_clusters
from .metrics import accuracy, consistency, segment_forecast_error
from .partitions import average_coassociation
from .reference import published_accuracy
from .synth import make_blob_data

METHODS = ("rcc", "l2cc", "kc", "kmeans", "ks-pipeline")
COMPONENT_ALPHAS = (0.01, 0.05, 0.1)


class ConfigError(ValueError):
    """The run configuration is not usable."""


class StageError(RuntimeError):
    """A pipeline stage failed; the message is prefixed with the stage name."""


@dataclass
class RunConfig:
    """Everything one benchmark invocation needs."""

    dataset: str
    method: str
    n_clusters: int
    n_runs: int = 40
    corruption: float = 0.0
    alpha: float = 0.05
    seeds: tuple[int, ...] = (0,)
    out: str | None = None
    trace: bool = False
    normalize: bool = False

    def validate(self) -> None:
        if self.method not in METHODS:
            raise ConfigError(
                f"unknown method {self.method!r}; choose from {', '.join(METHODS)}"
            )
        if self.n_clusters < 1:
            raise ConfigError("k must be >= 1")
        if self.n_runs < 1:
            raise ConfigError("runs must be >= 1")
        if not 0.0 <= self.corruption <= 1.0:
            raise ConfigError("corruption must be in [0, 1]")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError("alpha must be in (0, 1)")
        if not self.seeds:
            raise ConfigError("need at least one seed")


@dataclass
class SeedOutcome:
    """Per-seed results; optional fields stay None when not applicable."""

    seed: int
    accuracy: float | None = None
    converged: bool | None = None
    n_iter: int | None = None
    objective: float | None = None
    tpn: float | None = None
    fpn: float | None = None
    imp_mape: float | None = None
    spend_mape: float | None = None
    single_view_imp_mape: dict[str, float] | None = None
    single_view_spend_mape: dict[str, float] | None = None


@dataclass
class EvalReport:
    """Aggregated benchmark outcome, serializable to JSON."""

    dataset: str
    method: str
    n_clusters: int
    n_runs: int
    corruption: float
    alpha: float
    seeds: list[int]
    per_seed: list[SeedOutcome]
    mean_accuracy: float | None = None
    std_accuracy: float | None = None
    convergence: dict | None = None
    component_counts: dict[str, int] | None = None
    reference: dict[str, float] | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.per_seed:
            raise ValueError("a report needs at least one contributing run")

    def to_dict(self) -> dict:
        return asdict(self)


def _load_features(cfg: RunConfig) -> tuple[np.ndarray, np.ndarray | None]:
    spec = cfg.dataset
    if spec.startswith("blobs:"):
        params = {"n": 150, "k": cfg.n_clusters, "dim": 2, "sep": 4.0, "std": 1.0, "seed": 0}
        body = spec[len("blobs:"):]
        for item in filter(None, body.split(",")):
            key, _, value = item.partition("=")
            if key not in params:
                raise ConfigError(f"unknown blob parameter {key!r}")
            params[key] = float(value) if key in ("sep", "std") else int(value)
        x, y = make_blob_data(
            params["n"], params["k"], dim=params["dim"], sep=params["sep"],
            std=params["std"], seed=params["seed"],
        )
        return x, y
    x, y = rio.load_dataset(spec)
    if cfg.normalize:
        std = x.std(axis=0)
        std[std == 0] = 1.0
        x = (x - x.mean(axis=0)) / std
    return x, y


def _consensus_matrix(x: np.ndarray, cfg: RunConfig, seed: int) -> np.ndarray:
    views = build_ensemble(x, cfg.n_clusters, n_runs=cfg.n_runs, seed=seed)
    if cfg.corruption > 0:
        views = corrupt_ensemble(views, cfg.corruption, seed=seed)
    return average_coassociation(views)


def _write_trace(out_dir: Path, seed: int, result) -> None:
    path = out_dir / f"trace_seed{seed}.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["iter", "mu", "primal_residual", "objective"])
        for i, (mu, res, obj) in enumerate(
            zip(result.penalty_history, result.residual_history, result.objective_history),
            start=1,
        ):
            w.writerow([i, format(mu, ".12g"), format(res, ".12g"), format(obj, ".12g")])


def _feature_method_outcome(cfg: RunConfig, x, y, seed: int, out_dir: Path | None) -> SeedOutcome:
    outcome = SeedOutcome(seed=seed)
    if cfg.method == "kmeans":
        pred = kmeans_labels(x, cfg.n_clusters, seed=seed)
    else:
        m = _consensus_matrix(x, cfg, seed)
        if cfg.method == "rcc":
            result = solve_consensus(m, cfg.n_clusters, seed=seed)
            pred = result.labels
            outcome.converged = result.converged
            outcome.n_iter = len(result.objective_history)
            outcome.objective = float(result.objective_history[result.best_iter - 1])
            if cfg.trace and out_dir is not None:
                _write_trace(out_dir, seed, result)
        elif cfg.method == "l2cc":
            pred = l2_consensus(m, cfg.n_clusters, seed=seed)
        else:
            pred = kc_baseline(m, cfg.n_clusters, seed=seed)
    if y is not None:
        outcome.accuracy = accuracy(y, pred)
    return outcome


def _ks_pipeline_outcome(cfg: RunConfig, data, sims, seed: int) -> SeedOutcome:
    ids, win, cost, textual_x, truth, entities = data
    view_labels = {
        "textual": kmeans_labels(textual_x, cfg.n_clusters, seed=seed),
        "win_rate": similarity_clusters(sims["win_rate"], cfg.n_clusters, seed=seed),
        "ecpm": similarity_clusters(sims["ecpm"], cfg.n_clusters, seed=seed),
    }
    m = average_coassociation(np.vstack(list(view_labels.values())))
    result = solve_consensus(m, cfg.n_clusters, seed=seed)
    outcome = SeedOutcome(seed=seed, converged=result.converged, n_iter=len(result.objective_history))
    if truth is not None:
        outcome.accuracy = accuracy(truth, result.labels)
    outcome.tpn, outcome.fpn = consistency(view_labels["win_rate"], view_labels["ecpm"])
    imp, spend = segment_forecast_error(result.labels, entities)
    outcome.imp_mape, outcome.spend_mape = imp, spend
    outcome.single_view_imp_mape = {}
    outcome.single_view_spend_mape = {}
    for name, labels in view_labels.items():
        vi, vs = segment_forecast_error(labels, entities)
        outcome.single_view_imp_mape[name] = vi
        outcome.single_view_spend_mape[name] = vs
    return outcome


def _load_advertiser_dir(path: Path):
    win_ids, win = rio.load_samples(path / "win_rate_samples.csv")
    cost_ids, cost = rio.load_samples(path / "ecpm_samples.csv")
    if win_ids != cost_ids:
        raise rio.DataFormatError("win-rate and cost files disagree on entities")
    textual_x, truth = rio.load_dataset(path / "textual_features.csv")
    truth_ids, entities, _, _ = rio.load_forecast_truth(path / "forecast_truth.csv")
    if truth_ids != win_ids:
        raise rio.DataFormatError("forecast file disagrees with samples on entities")
    return win_ids, win, cost, textual_x, truth, entities


def run_benchmark(cfg: RunConfig) -> EvalReport:
    """Execute the configured pipeline for every seed and aggregate a report."""
    cfg.validate()
    out_dir = Path(cfg.out) if cfg.out else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)

    per_seed: list[SeedOutcome] = []
    component_counts = None
    notes: list[str] = []
    if cfg.method == "ks-pipeline":
        try:
            data = _load_advertiser_dir(Path(cfg.dataset))
        except rio.DataFormatError:
            raise
        except OSError as exc:
            raise rio.DataFormatError(f"stage=load: {exc}") from exc
        sims = {
            "win_rate": pairwise_similarity([EmpiricalCdf(s) for s in data[1]], cfg.alpha),
            "ecpm": pairwise_similarity([EmpiricalCdf(s) for s in data[2]], cfg.alpha),
        }
        for seed in cfg.seeds:
            try:
                per_seed.append(_ks_pipeline_outcome(cfg, data, sims, seed))
            except Exception as exc:
                raise StageError(f"stage=ks-pipeline seed={seed}: {exc}") from exc
        cdfs = [EmpiricalCdf(s) for s in data[1]]
        component_counts = {
            format(a, "g"): component_count(pairwise_similarity(cdfs, a))
            for a in COMPONENT_ALPHAS
        }
        notes.append("component_counts are for the win-rate similarity graph")
    else:
        try:
            x, y = _load_features(cfg)
        except (rio.DataFormatError, ConfigError):
            raise
        except OSError as exc:
            raise rio.DataFormatError(f"stage=load: {exc}") from exc
        if y is None:
            notes.append("dataset has no ground truth; accuracy omitted")
        for seed in cfg.seeds:
            try:
                per_seed.append(_feature_method_outcome(cfg, x, y, seed, out_dir))
            except Exception as exc:
                raise StageError(f"stage={cfg.method} seed={seed}: {exc}") from exc

    accs = [o.accuracy for o in per_seed if o.accuracy is not None]
    mean_acc = float(np.mean(accs)) if accs else None
    std_acc = float(np.std(accs)) if accs else None
    convergence = None
    conv_flags = [o.converged for o in per_seed if o.converged is not None]
    if conv_flags:
        iters = [o.n_iter for o in per_seed if o.n_iter is not None]
        convergence = {
            "converged_runs": int(sum(conv_flags)),
            "total_runs": len(conv_flags),
            "mean_iterations": float(np.mean(iters)) if iters else None,
        }

    dataset_name = Path(cfg.dataset).stem if not cfg.dataset.startswith("blobs:") else "blobs"
    return EvalReport(
        dataset=cfg.dataset,
        method=cfg.method,
        n_clusters=cfg.n_clusters,
        n_runs=cfg.n_runs,
        corruption=cfg.corruption,
        alpha=cfg.alpha,
        seeds=list(cfg.seeds),
        per_seed=per_seed,
        mean_accuracy=mean_acc,
        std_accuracy=std_acc,
        convergence=convergence,
        component_counts=component_counts,
        reference=published_accuracy(dataset_name),
        notes=notes,
    )


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def render_text(report: EvalReport) -> str:
    """Aligned plain-text table of the report."""
    lines = [
        f"dataset    : {report.dataset}",
        f"method     : {report.method}",
        f"k          : {report.n_clusters}",
        f"runs/seeds : {report.n_runs} runs, seeds {report.seeds}",
        f"corruption : {report.corruption:g}   alpha: {report.alpha:g}",
        "",
    ]
    header = ["seed", "acc", "conv", "iters", "tpn", "imp_mape", "spend_mape"]
    rows = [
        [
            str(o.seed),
            _fmt(o.accuracy),
            _fmt(o.converged),
            _fmt(o.n_iter),
            _fmt(o.tpn),
            _fmt(o.imp_mape),
            _fmt(o.spend_mape),
        ]
        for o in report.per_seed
    ]
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(header)]
    lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for r in rows:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)))
    lines.append("")
    if report.mean_accuracy is not None:
        lines.append(
            f"accuracy   : mean {report.mean_accuracy:.4f} +/- {report.std_accuracy:.4f}"
        )
    if report.convergence:
        c = report.convergence
        lines.append(
            f"solver     : {c['converged_runs']}/{c['total_runs']} runs converged"
        )
    if report.component_counts:
        parts = ", ".join(f"p={k}: {v}" for k, v in report.component_counts.items())
        lines.append(f"components : {parts}")
    if report.reference:
        parts = ", ".join(f"{m}={v:.2f}" for m, v in sorted(report.reference.items()))
        lines.append(f"published  : {parts}  (reference only, not asserted)")
    for note in report.notes:
        lines.append(f"note       : {note}")
    lines.append("")
    return "\n".join(lines)


def emit_report(report: EvalReport, out_dir) -> tuple[Path, Path]:
    """Write ``report.json`` and ``report.txt`` under ``out_dir``; returns both paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    json_path = out / "report.json"
    txt_path = out / "report.txt"
    with open(json_path, "w") as fh:
        json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(txt_path, "w") as fh:
        fh.write(render_text(report))
    return json_path, txt_path


def load_report(path) -> dict:
    """Re-parse an emitted JSON report."""
    with open(path) as fh:
        return json.load(fh)
