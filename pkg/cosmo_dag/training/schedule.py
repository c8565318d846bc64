"""
AnnealSchedule - Temperature as a function of the training epoch
"""
from dataclasses import dataclass
from typing import Iterator

from ..core.errors import InvalidConfigError
from .annealing import Annealing


@dataclass(frozen=True)
class AnnealSchedule:
    """Anneals the temperature from t_start at epoch 0 to t_end at the last epoch"""

    t_start: float = 0.45
    t_end: float = 7.5e-4
    epochs: int = 2000
    curve: str = "cosine"

    def __post_init__(self):
        if not (self.t_start > self.t_end > 0):
            raise InvalidConfigError(
                f"schedule needs t_start > t_end > 0, got t_start={self.t_start}, t_end={self.t_end}"
            )
        if self.epochs < 1:
            raise InvalidConfigError(f"schedule needs at least one epoch, got {self.epochs}")
        Annealing.get_function(self.curve)

    def progress(self, epoch: int) -> float:
        """Fraction of the schedule completed at the start of `epoch`"""
        if not 0 <= epoch < self.epochs:
            raise InvalidConfigError(f"epoch {epoch} outside schedule of {self.epochs} epochs")
        if self.epochs == 1:
            return 0.0
        return epoch / (self.epochs - 1)

    def temperature_at(self, epoch: int) -> float:
        """Temperature used throughout `epoch`"""
        return Annealing.apply(self.curve, self.progress(epoch), self.t_start, self.t_end)

    def temperatures(self) -> Iterator[float]:
        """Temperatures of all epochs in order"""
        for epoch in range(self.epochs):
            yield self.temperature_at(epoch)


def temperature_at(sched: AnnealSchedule, epoch: int) -> float:
    """Temperature of `sched` at `epoch`"""
    return sched.temperature_at(epoch)
