"""Training configuration and its JSON form.

Schema (all keys optional except ``activation.family``)::

    {
      "arch": [2, 8, 8, 1],
      "activation": {"family": "plu",
                     "params": {"alpha": 1.0, "rho_alpha": 5.0,
                                "beta": 1.0, "rho_beta": 0.15}},
      "lr": 0.01,
      "epochs": 496,
      "snapshot_epochs": [0, 50, 100, 495],
      "seed": 0,
      "dataset": {"n_per_class": 200, "turns": 1.75, "r_max": 1.0,
                  "noise_sigma": 0.05},
      "grid": {"bounds": [-1.2, 1.2, -1.2, 1.2], "resolution": 200}
    }

The dataset is generated from ``seed`` (``data`` stream) and the weights from
the same seed (``weights`` stream), so runs differing only in activation see
identical data and identical layer weights.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from ..activations import ActivationSpec
from ..network import validate_arch

DEFAULT_SNAPSHOTS = (0, 50, 100, 495)


@dataclass(frozen=True)
class DatasetConfig:
    n_per_class: int = 200
    turns: float = 1.75
    r_max: float = 1.0
    noise_sigma: float = 0.05


@dataclass(frozen=True)
class GridConfig:
    bounds: tuple = (-1.2, 1.2, -1.2, 1.2)
    resolution: int = 200


@dataclass
class TrainConfig:
    activation: ActivationSpec
    arch: list = field(default_factory=lambda: [2, 8, 8, 1])
    lr: float = 0.01
    epochs: int = 496
    snapshot_epochs: tuple = DEFAULT_SNAPSHOTS
    seed: int = 0
    dataset: DatasetConfig = field(default_factory=DatasetConfig)
    grid: GridConfig = field(default_factory=GridConfig)

    def __post_init__(self):
        self.arch = validate_arch(self.arch)
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        self.snapshot_epochs = tuple(sorted(set(int(e) for e in self.snapshot_epochs)))
        bad = [e for e in self.snapshot_epochs if not 0 <= e < self.epochs]
        if bad:
            raise ValueError(f"snapshot epochs {bad} outside [0, {self.epochs - 1}]")
        if not self.lr > 0:
            raise ValueError("lr must be positive")

    def to_dict(self) -> dict:
        return {
            "arch": list(self.arch),
            "activation": {"family": self.activation.family, "params": asdict(self.activation.params)},
            "lr": self.lr,
            "epochs": self.epochs,
            "snapshot_epochs": list(self.snapshot_epochs),
            "seed": self.seed,
            "dataset": asdict(self.dataset),
            "grid": {"bounds": list(self.grid.bounds), "resolution": self.grid.resolution},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrainConfig":
        act = d["activation"]
        spec = ActivationSpec(act["family"])
        if act.get("params"):
            merged = {**asdict(spec.params), **act["params"]}
            spec = spec.with_values([merged[k] for k in spec.param_names])
        kwargs = {k: d[k] for k in ("arch", "lr", "epochs", "snapshot_epochs", "seed") if k in d}
        if "dataset" in d:
            kwargs["dataset"] = DatasetConfig(**d["dataset"])
        if "grid" in d:
            g = d["grid"]
            kwargs["grid"] = GridConfig(tuple(g.get("bounds", GridConfig.bounds)),
                                        g.get("resolution", GridConfig.resolution))
        return cls(activation=spec, **kwargs)

    @classmethod
    def load(cls, path) -> "TrainConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))
