"""
Trainer - Mini-batch Adam training with an annealed orientation temperature

Each epoch sets the temperature from the schedule, shuffles the rows, walks
the batches (the last partial batch included), takes one Adam step per batch
and re-pins the self-loop weights to zero. There is no early stopping: the
schedule fixes the number of epochs.
"""
import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np
import pandas as pd

from ..core.errors import InvalidConfigError, NumericalAbortError
from ..core.graph import notears_h
from ..data.synthetic import Dataset
from ..models.base import RegWeights, StructureModel, check_batch
from .adam import AdamState, adam_step
from .callbacks import EPOCH_END, TRAIN_END, CallbackManager
from .schedule import AnnealSchedule

logger = logging.getLogger(__name__)

HISTORY_COLUMNS = ["epoch", "temperature", "loss", "h_value", "h_bound", "elapsed_ms", "h_weights"]


@dataclass(frozen=True)
class TrainConfig:
    """Mini-batch size, epochs, learning rate, penalties, shift eps and shuffle seed"""

    batch_size: int = 64
    epochs: int = 2000
    lr: float = 5.5e-3
    reg: RegWeights = field(default_factory=RegWeights)
    eps: float = 1.25e-2
    seed: int = 0
    center: bool = True
    track_acyclicity: bool = True
    log_every: int = 100

    def __post_init__(self):
        if self.batch_size < 1:
            raise InvalidConfigError(f"batch size must be at least 1, got {self.batch_size}")
        if self.epochs < 1:
            raise InvalidConfigError(f"epochs must be at least 1, got {self.epochs}")
        if not self.lr > 0:
            raise InvalidConfigError(f"learning rate must be positive, got {self.lr}")
        if not self.eps > 0:
            raise InvalidConfigError(f"shift eps must be positive, got {self.eps}")


@dataclass(frozen=True)
class EpochRecord:
    """One row of training history"""

    epoch: int
    temperature: float
    loss: float
    h_value: float
    h_bound: float
    elapsed_ms: float
    h_weights: float

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass
class TrainResult:
    """Trained model, per-epoch history and wall time of the fitting loop"""

    model: StructureModel
    history: List[EpochRecord]
    wall_time_s: float

    def history_frame(self) -> pd.DataFrame:
        """History as a DataFrame with HISTORY_COLUMNS"""
        return pd.DataFrame([record.to_dict() for record in self.history], columns=HISTORY_COLUMNS)

    def write_history(self, path: Union[str, Path]):
        """Write the history CSV"""
        self.history_frame().to_csv(path, index=False, float_format="%.17g")


def _log_progress(log_every: int):
    def callback(record: EpochRecord):
        if record.epoch % log_every == 0:
            logger.info(
                "epoch %d t=%.3e loss=%.6f h(S)=%.3e bound=%.3e",
                record.epoch, record.temperature, record.loss, record.h_value, record.h_bound,
            )
    return callback


def _grad_norms(grads: Dict[str, np.ndarray]) -> Dict[str, float]:
    return {name: float(np.linalg.norm(g)) for name, g in grads.items()}


def _observations(data: Union[Dataset, np.ndarray], d: int, center: bool) -> np.ndarray:
    X = data.X if isinstance(data, Dataset) else data
    X = check_batch(X, d)
    if center:
        X = X - X.mean(axis=0, keepdims=True)
    return X


def train(model: StructureModel, data: Union[Dataset, np.ndarray], tc: TrainConfig,
          sched: AnnealSchedule, callbacks: Optional[CallbackManager] = None) -> TrainResult:
    """Fit `model` to the observations in place and return it with its history"""
    if sched.epochs != tc.epochs:
        raise InvalidConfigError(f"schedule spans {sched.epochs} epochs but training runs {tc.epochs}")
    cfg = getattr(model, "cfg", None)
    if cfg is not None and cfg.eps != tc.eps:
        raise InvalidConfigError(f"model orientation uses eps={cfg.eps} but training is configured for eps={tc.eps}")
    callbacks = callbacks if callbacks is not None else CallbackManager()
    progress = _log_progress(tc.log_every) if tc.log_every > 0 else None
    if progress is not None:
        callbacks.register_callback(EPOCH_END, progress)
    try:
        return _fit(model, data, tc, sched, callbacks)
    finally:
        if progress is not None:
            callbacks.unregister_callback(EPOCH_END, progress)


def _fit(model: StructureModel, data: Union[Dataset, np.ndarray], tc: TrainConfig,
         sched: AnnealSchedule, callbacks: CallbackManager) -> TrainResult:
    X = _observations(data, model.d, tc.center)
    n = X.shape[0]
    rng = np.random.default_rng(tc.seed)
    state = AdamState(lr=tc.lr)
    history: List[EpochRecord] = []
    logger.debug("training %s on n=%d, d=%d for %d epochs", model.name, n, model.d, tc.epochs)

    start = time.perf_counter()
    for epoch in range(tc.epochs):
        t = sched.temperature_at(epoch)
        model.set_temperature(t)
        order = rng.permutation(n)
        total = 0.0

        for offset in range(0, n, tc.batch_size):
            batch = X[order[offset:offset + tc.batch_size]]
            loss, grads = model.objective(batch, tc.reg)
            if not (np.isfinite(loss) and all(np.all(np.isfinite(g)) for g in grads.values())):
                error = NumericalAbortError(epoch, t, _grad_norms(grads))
                logger.error("%s", error)
                raise error
            adam_step(state, model.arrays(), grads)
            model.pin_diagonal()
            total += loss * batch.shape[0]

        if tc.track_acyclicity:
            h_value, h_weights = notears_h(model.orientation()), notears_h(model.weights())
        else:
            h_value = h_weights = float("nan")
        record = EpochRecord(
            epoch=epoch,
            temperature=t,
            loss=total / n,
            h_value=h_value,
            h_bound=model.acyclicity_bound(),
            elapsed_ms=(time.perf_counter() - start) * 1000.0,
            h_weights=h_weights,
        )
        history.append(record)
        callbacks.emit(EPOCH_END, record)

    result = TrainResult(model=model, history=history, wall_time_s=time.perf_counter() - start)
    callbacks.emit(TRAIN_END, result)
    return result
