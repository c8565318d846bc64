"""
Errors - Exception hierarchy shared by every cosmo_dag module
"""
from typing import Dict, Optional


class CosmoError(Exception):
    """Base class for all cosmo_dag errors"""


class InvalidInputError(CosmoError, ValueError):
    """Raised for malformed arrays: non-finite entries, wrong rank"""


class ShapeMismatchError(InvalidInputError):
    """Raised when operand dimensions do not agree"""


class CyclicGraphError(InvalidInputError):
    """Raised when an operation requires a DAG and receives a cyclic graph"""


class InvalidConfigError(CosmoError, ValueError):
    """Raised for invalid hyperparameters or run configuration"""


class UndefinedMetricError(CosmoError, ValueError):
    """Raised when a metric is undefined for the given ground truth"""


class NumericalAbortError(CosmoError, RuntimeError):
    """Raised when training produces a non-finite loss"""

    def __init__(self, epoch: int, temperature: float,
                 grad_norms: Optional[Dict[str, float]] = None):
        self.epoch = epoch
        self.temperature = temperature
        self.grad_norms = dict(grad_norms or {})
        norms = ", ".join(f"{name}={value:.3e}" for name, value in self.grad_norms.items())
        super().__init__(
            f"non-finite loss at epoch {epoch} (t={temperature:.3e}; grad norms: {norms or 'n/a'})"
        )

    def __reduce__(self):
        return type(self), (self.epoch, self.temperature, self.grad_norms)
