"""Full-batch training loop with per-epoch logging and grid snapshots."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .. import network
from ..activations import effective_params
from ..data import SpiralDataset, make_spiral
from ..numerics import Rng
from ..optim import adam_init, adam_step, bce_with_logits
from .config import TrainConfig
from .export import probability_grid, write_grid_csv, write_pgm
from .metrics import central_row_changes, scan_complexity


class TrainingError(RuntimeError):
    """Training hit a non-finite value; ``report`` holds everything logged so far."""

    def __init__(self, msg: str, report: "TrainReport"):
        super().__init__(msg)
        self.report = report


@dataclass
class Snapshot:
    epoch: int
    checkpoint: dict
    grid: np.ndarray
    files: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "epoch": self.epoch,
            "checkpoint": self.checkpoint,
            "central_row_changes": central_row_changes(self.grid),
            "scan_complexity": scan_complexity(self.grid),
            "files": self.files,
        }


@dataclass
class TrainReport:
    config: TrainConfig
    loss_per_epoch: list = field(default_factory=list)
    trajectory: list = field(default_factory=list)
    snapshots: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=lambda: {"clamped_epochs": 0})
    error: str | None = None

    @property
    def final_loss(self) -> float:
        """Loss at the last epoch, measured before that epoch's update."""
        return self.loss_per_epoch[-1] if self.loss_per_epoch else math.nan

    def snapshot(self, epoch: int) -> Snapshot:
        for s in self.snapshots:
            if s.epoch == epoch:
                return s
        raise KeyError(epoch)

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "final_loss": self.final_loss,
            "loss_per_epoch": list(self.loss_per_epoch),
            "activation_param_trajectory": self.trajectory,
            "snapshots": [s.summary() for s in self.snapshots],
            "diagnostics": dict(self.diagnostics),
            "error": self.error,
        }


def dataset_for(cfg: TrainConfig) -> SpiralDataset:
    d = cfg.dataset
    return make_spiral(d.n_per_class, d.turns, d.r_max, d.noise_sigma, cfg.seed)


def _trajectory_entry(m: network.Mlp) -> dict:
    p = m.activation
    entry = dict(zip(p.param_names, (float(v) for v in p.values())))
    entry.update(effective_params(p))
    return entry


def train(cfg: TrainConfig, dataset: SpiralDataset | None = None, snapshot_dir=None) -> TrainReport:
    """Train one network; loss and trajectory for epoch ``e`` precede its update.

    With ``snapshot_dir`` each snapshot is also written as ``epoch_NNNN.{csv,pgm,json}``.
    """
    ds = dataset if dataset is not None else dataset_for(cfg)
    model = network.init_mlp(cfg.arch, cfg.activation, Rng(cfg.seed).derive("weights"))
    theta = network.to_vector(model)
    state = adam_init(theta.size, lr=cfg.lr)
    report = TrainReport(cfg)
    snaps = set(cfg.snapshot_epochs)
    if snapshot_dir is not None:
        snapshot_dir = Path(snapshot_dir)
        snapshot_dir.mkdir(parents=True, exist_ok=True)

    for epoch in range(cfg.epochs):
        model = network.with_vector(model, theta)
        try:
            logits, cache = network.forward(model, ds.points)
            loss, d_logits = bce_with_logits(logits, ds.labels)
            if not math.isfinite(loss):
                raise FloatingPointError(f"non-finite loss {loss}")
        except (FloatingPointError, ArithmeticError) as exc:
            report.error = f"epoch {epoch}: {exc}"
            raise TrainingError(report.error, report) from exc
        report.loss_per_epoch.append(loss)
        report.trajectory.append(_trajectory_entry(model))
        if cache["clamped"]:
            report.diagnostics["clamped_epochs"] += 1

        if epoch in snaps:
            pts, probs = probability_grid(model, cfg.grid.bounds, cfg.grid.resolution)
            snap = Snapshot(epoch, network.checkpoint_dict(model), probs)
            if snapshot_dir is not None:
                base = snapshot_dir / f"epoch_{epoch:04d}"
                write_grid_csv(base.with_suffix(".csv"), pts, probs)
                write_pgm(base.with_suffix(".pgm"), probs)
                base.with_suffix(".json").write_text(json.dumps(snap.checkpoint, indent=2) + "\n")
                snap.files = {k: base.with_suffix("." + k).name for k in ("csv", "pgm", "json")}
            report.snapshots.append(snap)

        grad = network.backward(model, cache, d_logits)
        try:
            theta, state = adam_step(state, theta, grad)
        except FloatingPointError as exc:
            report.error = f"epoch {epoch}: {exc}"
            raise TrainingError(report.error, report) from exc
    return report
