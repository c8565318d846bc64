"""
Linear - COSMO and NOCURL-U linear structural equation learners

Both models predict each variable as a linear function of the others,
X_hat = X W, and differ only in how W is oriented:
    COSMO      W = H * sigmoid((p[v] - p[u] - eps) / t)
    NOCURL-U   W = H * ReLU(p[v] - p[u])
The loss is |X - X W|_F^2 / (2 B) plus the RegWeights penalties.
"""
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from ..core.errors import ShapeMismatchError
from ..core.orientation import (
    OrientationConfig,
    acyclicity_upper_bound,
    compose,
    direct_gradient,
    init_priority,
    priority_differences,
    priority_gradient,
    relu_orientation,
    smooth_orientation,
)
from .base import Gradients, RegWeights, StructureModel, check_batch


@dataclass
class CosmoParams(StructureModel):
    """Direct matrix H, priority vector p and the orientation config (t scheduled externally)"""

    H: np.ndarray
    p: np.ndarray
    cfg: OrientationConfig

    name = "cosmo-linear"

    def __post_init__(self):
        self.H = np.array(self.H, dtype=float)
        self.p = np.array(self.p, dtype=float)
        if self.H.shape != (self.p.size, self.p.size):
            raise ShapeMismatchError(f"H{self.H.shape} does not match {self.p.size} priorities")

    @classmethod
    def initialize(cls, d: int, cfg: OrientationConfig,
                   rng: Optional[np.random.Generator] = None) -> "CosmoParams":
        """Zero direct matrix, priorities drawn from N(0, eps^2 / 2)"""
        return cls(H=np.zeros((d, d)), p=init_priority(d, cfg.eps, rng), cfg=cfg)

    @property
    def d(self) -> int:
        return self.p.size

    def arrays(self) -> Dict[str, np.ndarray]:
        return {"H": self.H, "p": self.p}

    def orientation(self) -> np.ndarray:
        return smooth_orientation(self.p, self.cfg)

    def weights(self) -> np.ndarray:
        return compose(self.H, self.orientation())

    def set_temperature(self, t: float):
        self.cfg = self.cfg.with_temperature(t)

    @property
    def temperature(self) -> float:
        return self.cfg.t

    def acyclicity_bound(self) -> float:
        return acyclicity_upper_bound(self.cfg, self.d)

    def objective(self, X: np.ndarray, reg: RegWeights) -> Tuple[float, Gradients]:
        loss, dH, dp = loss_and_grads(self, X, reg)
        return loss, {"H": dH, "p": dp}


@dataclass
class NocurlParams(StructureModel):
    """NOCURL-U baseline: direct matrix H oriented by ReLU priority differences"""

    H: np.ndarray
    p: np.ndarray

    name = "nocurl-u"

    def __post_init__(self):
        self.H = np.array(self.H, dtype=float)
        self.p = np.array(self.p, dtype=float)
        if self.H.shape != (self.p.size, self.p.size):
            raise ShapeMismatchError(f"H{self.H.shape} does not match {self.p.size} priorities")

    @classmethod
    def initialize(cls, d: int, rng: Optional[np.random.Generator] = None) -> "NocurlParams":
        """Zero direct matrix, standard normal priorities"""
        rng = rng if rng is not None else np.random.default_rng()
        return cls(H=np.zeros((d, d)), p=rng.normal(0.0, 1.0, size=d))

    @property
    def d(self) -> int:
        return self.p.size

    def arrays(self) -> Dict[str, np.ndarray]:
        return {"H": self.H, "p": self.p}

    def orientation(self) -> np.ndarray:
        return relu_orientation(self.p)

    def weights(self) -> np.ndarray:
        return compose(self.H, self.orientation())

    def objective(self, X: np.ndarray, reg: RegWeights) -> Tuple[float, Gradients]:
        loss, dH, dp = nocurlu_loss_and_grads(self.H, self.p, X, reg)
        return loss, {"H": dH, "p": dp}


def _least_squares(X: np.ndarray, W: np.ndarray) -> Tuple[float, np.ndarray]:
    """Loss |X - X W|^2 / (2 B) and its gradient with respect to W"""
    B = X.shape[0]
    R = X - X @ W
    return float(np.square(R).sum() / (2.0 * B)), -(X.T @ R) / B


def predict(params: CosmoParams, X_batch) -> np.ndarray:
    """Linear SEM reconstruction X W with W = H * S_{t,eps}(p)"""
    X = check_batch(X_batch, params.d)
    return X @ params.weights()


def loss_and_grads(params: CosmoParams, X_batch, reg: RegWeights) -> Tuple[float, np.ndarray, np.ndarray]:
    """Regularized COSMO objective with gradients (loss, dL/dH, dL/dp)"""
    X = check_batch(X_batch, params.d)
    S = params.orientation()
    fit, dW = _least_squares(X, compose(params.H, S))
    loss = fit + reg.penalty(params.H, params.p)
    dH = direct_gradient(dW, S) + reg.grad_H(params.H)
    dp = priority_gradient(params.H, params.p, params.cfg, dW) + reg.grad_p(params.p)
    return loss, dH, dp


def nocurlu_loss_and_grads(H, p, X_batch, reg: RegWeights) -> Tuple[float, np.ndarray, np.ndarray]:
    """NOCURL-U objective; the ReLU subgradient at zero is taken as zero"""
    H = np.asarray(H, dtype=float)
    p = np.asarray(p, dtype=float)
    X = check_batch(X_batch, p.size)
    D = priority_differences(p)
    M = np.maximum(D, 0.0)
    fit, dW = _least_squares(X, compose(H, M))
    loss = fit + reg.penalty(H, p)
    dH = direct_gradient(dW, M) + reg.grad_H(H)
    G = dW * H * (D > 0)
    dp = G.sum(axis=0) - G.sum(axis=1) + reg.grad_p(p)
    return loss, dH, dp
