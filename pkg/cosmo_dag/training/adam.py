"""
Adam - Bias-corrected adaptive moment estimation over named parameter arrays
"""
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from ..core.errors import InvalidConfigError, ShapeMismatchError


@dataclass
class AdamState:
    """Moment accumulators per parameter name, step counter and hyperparameters"""

    lr: float = 5.5e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step: int = 0
    m: Dict[str, np.ndarray] = field(default_factory=dict)
    v: Dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if not self.lr > 0:
            raise InvalidConfigError(f"learning rate must be positive, got {self.lr}")
        if not (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1):
            raise InvalidConfigError(f"betas must lie in [0, 1), got {self.beta1}, {self.beta2}")


def adam_step(state: AdamState, params: Dict[str, np.ndarray],
              grads: Dict[str, np.ndarray]) -> Dict[str, np.ndarray]:
    """Apply one Adam update to `params` in place and return them"""
    if params.keys() != grads.keys():
        raise ShapeMismatchError(f"parameters {sorted(params)} and gradients {sorted(grads)} differ")
    for name, value in params.items():
        if value.shape != np.shape(grads[name]):
            raise ShapeMismatchError(f"{name}: parameter {value.shape} vs gradient {np.shape(grads[name])}")

    state.step += 1
    bc1 = 1.0 - state.beta1 ** state.step
    bc2 = 1.0 - state.beta2 ** state.step

    for name, value in params.items():
        g = grads[name]
        if name not in state.m:
            state.m[name] = np.zeros_like(value)
            state.v[name] = np.zeros_like(value)

        state.m[name] *= state.beta1
        state.m[name] += (1.0 - state.beta1) * g
        state.v[name] *= state.beta2
        state.v[name] += (1.0 - state.beta2) * (g * g)

        m_hat = state.m[name] / bc1
        v_hat = state.v[name] / bc2
        value -= state.lr * m_hat / (np.sqrt(v_hat) + state.eps)

    return params
