"""Comparative spiral runs: exp1 (2-8-8-1), exp2 (2-8-8-1, strong repulsion),
exp3 (2-2-2-1) and the collapse comparison of the unrepulsed PLU draft."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from ..activations import ActivationSpec, PluParams, PluTheoreticalParams, SnakeParams
from ..data import save_csv
from .config import DEFAULT_SNAPSHOTS, TrainConfig
from .training import TrainReport, dataset_for, train

EPOCHS = 496
COMPARED = ("relu", "gelu", "snake", "plu")

EXPERIMENTS = {
    # id: (arch, (rho_alpha, rho_beta))
    "exp1": ([2, 8, 8, 1], (5.0, 0.15)),
    "exp2": ([2, 8, 8, 1], (15.0, 0.5)),
    "exp3": ([2, 2, 2, 1], (5.0, 0.15)),
}


@dataclass
class ExperimentReport:
    id: str
    seed: int
    runs: dict = field(default_factory=dict)

    def final_losses(self) -> dict:
        return {k: r.final_loss for k, r in self.runs.items()}

    def to_dict(self) -> dict:
        return {"id": self.id, "seed": self.seed, "final_losses": self.final_losses(),
                "runs": {k: r.to_dict() for k, r in self.runs.items()}}


def activation_for(family: str, rho=(5.0, 0.15)) -> ActivationSpec:
    if family == "plu":
        return ActivationSpec("plu", PluParams(1.0, rho[0], 1.0, rho[1]))
    if family == "plu-theoretical":
        return ActivationSpec("plu-theoretical", PluTheoreticalParams(1.0, 1.0))
    if family == "snake":
        return ActivationSpec("snake", SnakeParams(1.0))
    return ActivationSpec(family)


def _run_all(exp_id, arch, specs, seed, out_dir, epochs, snapshot_epochs) -> ExperimentReport:
    base = TrainConfig(specs[0], arch=arch, epochs=epochs, snapshot_epochs=snapshot_epochs, seed=seed)
    ds = dataset_for(base)
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        save_csv(ds, out_dir / "data.csv")
    report = ExperimentReport(exp_id, seed)
    for spec in specs:
        cfg = replace(base, activation=spec)
        snap_dir = None if out_dir is None else out_dir / spec.family
        report.runs[spec.family] = train(cfg, ds, snapshot_dir=snap_dir)
    if out_dir is not None:
        (out_dir / "report.json").write_text(json.dumps(report.to_dict(), indent=1) + "\n")
    return report


def run_experiment(exp_id: str, base_seed: int = 0, out_dir=None, epochs: int = EPOCHS,
                   snapshot_epochs=DEFAULT_SNAPSHOTS) -> ExperimentReport:
    """One run per activation, all sharing the dataset and layer-weight init."""
    if exp_id == "collapse":
        return collapse_demo(base_seed, out_dir, epochs, snapshot_epochs)
    if exp_id not in EXPERIMENTS:
        raise ValueError(f"unknown experiment {exp_id!r}")
    arch, rho = EXPERIMENTS[exp_id]
    specs = [activation_for(f, rho) for f in COMPARED]
    return _run_all(exp_id, arch, specs, base_seed, out_dir, epochs, snapshot_epochs)


def collapse_demo(base_seed: int = 0, out_dir=None, epochs: int = EPOCHS,
                  snapshot_epochs=DEFAULT_SNAPSHOTS) -> ExperimentReport:
    """Learnable-parameter PLU draft without repulsion vs the repulsed PLU on 2-8-8-1."""
    specs = [activation_for("plu-theoretical"), activation_for("plu")]
    return _run_all("collapse", [2, 8, 8, 1], specs, base_seed, out_dir, epochs, snapshot_epochs)


def abs_beta_eff(report: TrainReport) -> np.ndarray:
    return np.abs([t["beta_eff"] for t in report.trajectory])


def multi_seed(exp_id: str, base_seed: int = 0, n_seeds: int = 5, **kwargs) -> list[ExperimentReport]:
    return [run_experiment(exp_id, base_seed + i, **kwargs) for i in range(n_seeds)]


def median_over(reports: list[ExperimentReport], fn) -> dict:
    """Median of ``fn(train_report)`` per activation across seeds."""
    families = reports[0].runs.keys()
    return {f: float(np.median([fn(r.runs[f]) for r in reports])) for f in families}
