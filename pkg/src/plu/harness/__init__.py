from .config import DatasetConfig, GridConfig, TrainConfig
from .experiments import ExperimentReport, collapse_demo, run_experiment
from .export import export_grid
from .gradcheck import gradcheck
from .training import TrainingError, TrainReport, train

__all__ = [
    "DatasetConfig", "GridConfig", "TrainConfig", "ExperimentReport", "collapse_demo",
    "run_experiment", "export_grid", "gradcheck", "TrainingError", "TrainReport", "train",
]
