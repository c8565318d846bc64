"""
Training - annealing schedules, Adam and the mini-batch training loop
"""

from .annealing import Annealing
from .schedule import AnnealSchedule, temperature_at
from .adam import AdamState, adam_step
from .callbacks import EPOCH_END, TRAIN_END, CallbackManager
from .trainer import HISTORY_COLUMNS, EpochRecord, TrainConfig, TrainResult, train

__all__ = [
    "Annealing",
    "AnnealSchedule",
    "temperature_at",
    "AdamState",
    "adam_step",
    "EPOCH_END",
    "TRAIN_END",
    "CallbackManager",
    "HISTORY_COLUMNS",
    "EpochRecord",
    "TrainConfig",
    "TrainResult",
    "train",
]
