"""
cosmo_dag - Constraint-free structure learning of directed acyclic graphs

Features:
- Smooth acyclic orientation of a weighted adjacency from a node priority vector
- Linear and MLP structural equation learners trained with mini-batch Adam
- Temperature annealing with a closed-form acyclicity bound
- NOCURL-U baseline, ER/SF synthetic benchmarks and recovery metrics
"""

from .core.errors import CosmoError
from .core.graph import is_dag, notears_h, threshold
from .core.orientation import OrientationConfig, hard_orientation, smooth_orientation
from .data.synthetic import GraphSpec, NoiseSpec, simulate
from .models.base import RegWeights
from .models.linear import CosmoParams, NocurlParams
from .models.nonlinear import NonlinearParams
from .training.schedule import AnnealSchedule
from .training.trainer import TrainConfig, train
from .evaluation.report import EvalReport, evaluate

__version__ = "1.0.0"
__author__ = "tikisan"

# Main exports
__all__ = [
    "CosmoError",
    "is_dag",
    "notears_h",
    "threshold",
    "OrientationConfig",
    "hard_orientation",
    "smooth_orientation",
    "GraphSpec",
    "NoiseSpec",
    "simulate",
    "RegWeights",
    "CosmoParams",
    "NocurlParams",
    "NonlinearParams",
    "AnnealSchedule",
    "TrainConfig",
    "train",
    "EvalReport",
    "evaluate",
]
