"""
StructureModel - Base class for every learnable acyclic structure model
"""
import copy
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from ..core.errors import InvalidConfigError, InvalidInputError, ShapeMismatchError

Gradients = Dict[str, np.ndarray]


@dataclass(frozen=True)
class RegWeights:
    """Coefficients of the L1 / squared-L2 penalties on H and the squared-L2 penalty on p"""

    lambda1: float = 5.5e-4
    lambda2: float = 3e-3
    lambda_p: float = 2e-3

    def __post_init__(self):
        for name in ("lambda1", "lambda2", "lambda_p"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value >= 0):
                raise InvalidConfigError(f"{name} must be a non-negative number, got {value}")

    def penalty(self, H: np.ndarray, p: np.ndarray) -> float:
        """lambda1 |H|_1 + lambda2 |H|_2^2 + lambda_p |p|_2^2 (H may be a tensor)"""
        return float(
            self.lambda1 * np.abs(H).sum()
            + self.lambda2 * np.square(H).sum()
            + self.lambda_p * np.square(p).sum()
        )

    def grad_H(self, H: np.ndarray) -> np.ndarray:
        """Penalty gradient on H, with the subgradient sign(0) = 0"""
        return self.lambda1 * np.sign(H) + 2.0 * self.lambda2 * H

    def grad_p(self, p: np.ndarray) -> np.ndarray:
        """Penalty gradient on p"""
        return 2.0 * self.lambda_p * p


class StructureModel(ABC):
    """Base class for models that learn a weighted DAG from observations"""

    name = "model"

    @property
    @abstractmethod
    def d(self) -> int:
        """Number of variables"""

    @abstractmethod
    def arrays(self) -> Dict[str, np.ndarray]:
        """Trainable arrays by name; optimizers update them in place"""

    @abstractmethod
    def objective(self, X: np.ndarray, reg: RegWeights) -> Tuple[float, Gradients]:
        """Regularized loss on a batch and its gradients keyed like arrays()"""

    @abstractmethod
    def orientation(self) -> np.ndarray:
        """Current orientation factor applied to the direct weights"""

    @abstractmethod
    def weights(self) -> np.ndarray:
        """Current d x d weighted adjacency used for thresholding and scoring"""

    def set_temperature(self, t: float):
        """Temperature hook - models without a tempered orientation ignore it"""
        pass

    @property
    def temperature(self) -> float:
        """Current temperature, NaN when the model has none"""
        return float("nan")

    def acyclicity_bound(self) -> float:
        """Upper bound on notears_h of orientation(), NaN when none is known"""
        return float("nan")

    def pin_diagonal(self):
        """Zero the self-loop entries of the direct weights"""
        H = self.arrays()["H"]
        idx = np.arange(self.d)
        H[idx, idx] = 0.0

    def snapshot(self) -> "StructureModel":
        """Deep copy safe to evaluate while training continues"""
        return copy.deepcopy(self)


def check_batch(X, d: int) -> np.ndarray:
    """Validate a non-empty B x d batch"""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise InvalidInputError(f"batch must be 2-D, got shape {X.shape}")
    if X.shape[1] != d:
        raise ShapeMismatchError(f"batch has {X.shape[1]} columns, model has {d} variables")
    if X.shape[0] == 0:
        raise InvalidInputError("batch is empty")
    return X
