"""
Nonlinear - COSMO with one sigmoid MLP per variable

H[u, v, i] is the weight from variable u into hidden unit i of the network
that predicts variable v. The smooth orientation masks it along the hidden
axis, so S[u, v] scales every connection from u into network v:
    A[b, v, i] = sum_u X[b, u] H[u, v, i] S[u, v] + b1[v, i]
    X_hat[b, v] = sum_i sigmoid(A[b, v, i]) W2[v, i] + b2[v]
"""
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.special import expit

from ..core.errors import InvalidConfigError, ShapeMismatchError
from ..core.orientation import (
    OrientationConfig,
    acyclicity_upper_bound,
    compose,
    direct_gradient,
    init_priority,
    priority_gradient,
    smooth_orientation,
)
from .base import Gradients, RegWeights, StructureModel, check_batch

LEARNER_HIDDEN = 10
FIRST_LAYER_STD = 0.1


@dataclass
class NonlinearParams(StructureModel):
    """First-layer tensor H, per-variable output layers (W2, b1, b2), priorities p"""

    H: np.ndarray
    W2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    p: np.ndarray
    cfg: OrientationConfig

    name = "cosmo-mlp"

    def __post_init__(self):
        self.H = np.array(self.H, dtype=float)
        self.W2 = np.array(self.W2, dtype=float)
        self.b1 = np.array(self.b1, dtype=float)
        self.b2 = np.array(self.b2, dtype=float)
        self.p = np.array(self.p, dtype=float)
        d = self.p.size
        if self.H.ndim != 3 or self.H.shape[:2] != (d, d) or self.H.shape[2] < 1:
            raise ShapeMismatchError(f"H must have shape ({d}, {d}, h), got {self.H.shape}")
        h = self.H.shape[2]
        if self.W2.shape != (d, h) or self.b1.shape != (d, h) or self.b2.shape != (d,):
            raise ShapeMismatchError(
                f"output layers W2{self.W2.shape}, b1{self.b1.shape}, b2{self.b2.shape} "
                f"do not match d={d}, h={h}"
            )

    @classmethod
    def initialize(cls, d: int, hidden: int, cfg: OrientationConfig,
                   rng: Optional[np.random.Generator] = None) -> "NonlinearParams":
        """H ~ N(0, 0.1^2), W2 ~ U(-1/sqrt(h), 1/sqrt(h)), zero biases, p ~ N(0, eps^2 / 2)"""
        if hidden < 1:
            raise InvalidConfigError(f"hidden width must be positive, got {hidden}")
        rng = rng if rng is not None else np.random.default_rng()
        bound = 1.0 / np.sqrt(hidden)
        params = cls(
            H=rng.normal(0.0, FIRST_LAYER_STD, size=(d, d, hidden)),
            W2=rng.uniform(-bound, bound, size=(d, hidden)),
            b1=np.zeros((d, hidden)),
            b2=np.zeros(d),
            p=init_priority(d, cfg.eps, rng),
            cfg=cfg,
        )
        params.pin_diagonal()
        return params

    @property
    def d(self) -> int:
        return self.p.size

    @property
    def hidden(self) -> int:
        return self.H.shape[2]

    def arrays(self) -> Dict[str, np.ndarray]:
        return {"H": self.H, "W2": self.W2, "b1": self.b1, "b2": self.b2, "p": self.p}

    def orientation(self) -> np.ndarray:
        return smooth_orientation(self.p, self.cfg)

    def weights(self) -> np.ndarray:
        """Arc strength sqrt(sum_i (H[u, v, i] S[u, v])^2)"""
        return np.sqrt(np.square(compose(self.H, self.orientation())).sum(axis=2))

    def set_temperature(self, t: float):
        self.cfg = self.cfg.with_temperature(t)

    @property
    def temperature(self) -> float:
        return self.cfg.t

    def acyclicity_bound(self) -> float:
        return acyclicity_upper_bound(self.cfg, self.d)

    def objective(self, X: np.ndarray, reg: RegWeights) -> Tuple[float, Gradients]:
        loss, dH, dPhi, dp = nl_loss_and_grads(self, X, reg)
        return loss, {"H": dH, "p": dp, **dPhi}


def _forward(params: NonlinearParams, X: np.ndarray):
    S = params.orientation()
    masked = compose(params.H, S)
    Z = expit(np.einsum("bu,uvi->bvi", X, masked) + params.b1)
    out = np.einsum("bvi,vi->bv", Z, params.W2) + params.b2
    return S, Z, out


def nl_predict(params: NonlinearParams, X_batch) -> np.ndarray:
    """Per-variable MLP reconstruction of the batch"""
    X = check_batch(X_batch, params.d)
    return _forward(params, X)[2]


def nl_loss_and_grads(params: NonlinearParams, X_batch,
                      reg: RegWeights) -> Tuple[float, np.ndarray, Dict[str, np.ndarray], np.ndarray]:
    """Regularized loss with gradients (loss, dL/dH, {W2, b1, b2}, dL/dp)"""
    X = check_batch(X_batch, params.d)
    B = X.shape[0]
    S, Z, out = _forward(params, X)
    residual = out - X
    loss = float(np.square(residual).sum() / (2.0 * B)) + reg.penalty(params.H, params.p)

    d_out = residual / B
    dW2 = np.einsum("bvi,bv->vi", Z, d_out)
    db2 = d_out.sum(axis=0)
    d_pre = d_out[:, :, np.newaxis] * params.W2[np.newaxis] * Z * (1.0 - Z)
    db1 = d_pre.sum(axis=0)
    d_masked = np.einsum("bu,bvi->uvi", X, d_pre)

    dH = direct_gradient(d_masked, S) + reg.grad_H(params.H)
    dp = priority_gradient(params.H, params.p, params.cfg, d_masked) + reg.grad_p(params.p)
    return loss, dH, {"W2": dW2, "b1": db1, "b2": db2}, dp
