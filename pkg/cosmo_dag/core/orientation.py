"""
Orientation - Priority vectors, tempered sigmoids and (smooth) orientation matrices

A priority vector p orders the nodes: u may feed v only when p[v] - p[u] >= eps.
The smooth orientation S[u, v] = sigmoid((p[v] - p[u] - eps) / t) relaxes that
order and converges to it as the temperature t goes to zero.
"""
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np
from scipy.special import expit

from .errors import InvalidConfigError, InvalidInputError, ShapeMismatchError

ORDER_SPACING_SLACK = 1e-9


@dataclass(frozen=True)
class OrientationConfig:
    """Shift eps and temperature t of the smooth orientation"""

    eps: float
    t: float

    def __post_init__(self):
        _check_positive(self.t, self.eps)

    @property
    def alpha(self) -> float:
        """Diagonal value sigmoid(-eps / t), the base of the acyclicity bound"""
        return float(expit(-self.eps / self.t))

    def with_temperature(self, t: float) -> "OrientationConfig":
        """Copy of this config at another temperature"""
        return replace(self, t=t)


def _check_positive(t: float, eps: float):
    if not (np.isfinite(t) and t > 0):
        raise InvalidConfigError(f"temperature must be strictly positive, got {t}")
    if not (np.isfinite(eps) and eps > 0):
        raise InvalidConfigError(f"shift eps must be strictly positive, got {eps}")


def as_priority(p) -> np.ndarray:
    """Return p as a finite 1-D float array"""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1:
        raise InvalidInputError(f"priority vector must be 1-D, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise InvalidInputError("priority vector has non-finite entries")
    return p


def priority_differences(p) -> np.ndarray:
    """Matrix D with D[u, v] = p[v] - p[u]"""
    p = as_priority(p)
    return p[np.newaxis, :] - p[:, np.newaxis]


def tempered_sigmoid(x, t: float, eps: float):
    """sigmoid((x - eps) / t); saturates to 0 or 1 instead of overflowing"""
    _check_positive(t, eps)
    return expit((np.asarray(x, dtype=float) - eps) / t)


def hard_orientation(p, eps: float) -> np.ndarray:
    """Binary orientation T[u, v] = (p[v] - p[u] >= eps); always acyclic"""
    if not eps > 0:
        raise InvalidConfigError(f"shift eps must be strictly positive, got {eps}")
    return priority_differences(p) >= eps


def smooth_orientation(p, cfg: OrientationConfig) -> np.ndarray:
    """Smooth orientation S[u, v] = sigmoid_{t,eps}(p[v] - p[u])"""
    return expit((priority_differences(p) - cfg.eps) / cfg.t)


def relu_orientation(p) -> np.ndarray:
    """Unconstrained orientation ReLU(p[v] - p[u]) used by the NOCURL-U baseline"""
    return np.maximum(priority_differences(p), 0.0)


def _broadcast_mask(H: np.ndarray, S: np.ndarray) -> np.ndarray:
    S = np.asarray(S, dtype=float)
    if H.shape[:2] != S.shape or H.ndim not in (2, 3):
        raise ShapeMismatchError(f"cannot compose H{H.shape} with S{S.shape}")
    return S if H.ndim == 2 else S[:, :, np.newaxis]


def compose(H, S) -> np.ndarray:
    """W = H * S; a 3-D H is masked along its trailing hidden axis"""
    H = np.asarray(H, dtype=float)
    return H * _broadcast_mask(H, S)


def direct_gradient(dL_dW, S) -> np.ndarray:
    """Chain rule through the elementwise product: dL/dH = dL/dW * S"""
    dL_dW = np.asarray(dL_dW, dtype=float)
    return dL_dW * _broadcast_mask(dL_dW, S)


def priority_gradient(H, p, cfg: OrientationConfig, dL_dW) -> np.ndarray:
    """Gradient of the loss with respect to the priority vector.

    W[u, v] depends on p[u] with slope -(H[u, v] / t) s (1 - s) and on p[v]
    with the opposite slope, where s = S[u, v]. Summing the per-arc
    contributions G[u, v] = dL/dW[u, v] * H[u, v] * s (1 - s) / t gives
    dL/dp[k] = sum_u G[u, k] - sum_v G[k, v]. With 3-D H the hidden axis is
    summed first.
    """
    H = np.asarray(H, dtype=float)
    dL_dW = np.asarray(dL_dW, dtype=float)
    if H.shape != dL_dW.shape:
        raise ShapeMismatchError(f"H{H.shape} and dL/dW{dL_dW.shape} differ")
    S = smooth_orientation(p, cfg)
    weighted = dL_dW * H
    if weighted.ndim == 3:
        weighted = weighted.sum(axis=2)
    if weighted.shape != S.shape:
        raise ShapeMismatchError(f"H{H.shape} does not match {S.shape[0]} priorities")
    G = weighted * S * (1.0 - S) / cfg.t
    return G.sum(axis=0) - G.sum(axis=1)


def acyclicity_upper_bound(cfg: OrientationConfig, d: int) -> float:
    """Upper bound exp(d * alpha) - 1 on notears_h of any smooth orientation"""
    if d < 1:
        raise InvalidConfigError(f"node count must be positive, got {d}")
    return float(np.expm1(d * cfg.alpha))


def priority_from_order(order: Sequence[int], eps: float) -> np.ndarray:
    """Priorities p[order[i]] = eps * i, whose hard orientation totally orders the nodes

    The spacing is widened by ORDER_SPACING_SLACK so that rounding in p[v] - p[u]
    never drops a consecutive pair below eps.
    """
    if not eps > 0:
        raise InvalidConfigError(f"shift eps must be strictly positive, got {eps}")
    order = [int(v) for v in order]
    if sorted(order) != list(range(len(order))):
        raise InvalidInputError("order must be a permutation of 0..d-1")
    p = np.empty(len(order))
    p[order] = eps * (1.0 + ORDER_SPACING_SLACK) * np.arange(len(order))
    return p


def init_priority(d: int, eps: float, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """Sample p ~ N(0, eps^2 / 2) so that pairwise differences follow N(0, eps^2)"""
    rng = rng if rng is not None else np.random.default_rng()
    return rng.normal(0.0, eps / np.sqrt(2.0), size=d)
