"""
Metrics - Structure recovery scores of a learned graph against the ground truth

Arc errors follow the SHD convention of the NOTEARS lineage: a true arc
predicted in the opposite direction counts once, as reversed.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.stats import rankdata

from ..core.errors import ShapeMismatchError, UndefinedMetricError
from ..core.graph import as_binary, as_square


@dataclass(frozen=True)
class StructuralErrors:
    """Missing, extra and reversed arc counts"""

    missing: int
    extra: int
    reversed: int

    @property
    def total(self) -> int:
        return self.missing + self.extra + self.reversed


def _pair(pred, truth) -> Tuple[np.ndarray, np.ndarray]:
    pred, truth = as_binary(pred), as_binary(truth)
    if pred.shape != truth.shape:
        raise ShapeMismatchError(f"predicted graph {pred.shape} and truth {truth.shape} differ in size")
    return pred, truth


def structural_errors(pred, truth) -> StructuralErrors:
    """Count missing, extra and reversed arcs of `pred` with respect to `truth`"""
    pred, truth = _pair(pred, truth)
    reversed_arcs = truth & ~pred & pred.T
    missing = truth & ~pred & ~pred.T
    extra = pred & ~truth & ~truth.T
    return StructuralErrors(
        missing=int(missing.sum()),
        extra=int(extra.sum()),
        reversed=int(reversed_arcs.sum()),
    )


def nhd(pred, truth) -> float:
    """Normalized Hamming distance (missing + extra + reversed) / d"""
    pred, truth = _pair(pred, truth)
    return structural_errors(pred, truth).total / pred.shape[0]


def _off_diagonal(matrix: np.ndarray) -> np.ndarray:
    return matrix[~np.eye(matrix.shape[0], dtype=bool)]


def tpr_fpr(pred, truth) -> Tuple[float, float]:
    """True and false positive rates over ordered pairs u != v"""
    pred, truth = _pair(pred, truth)
    predicted, labels = _off_diagonal(pred), _off_diagonal(truth)
    positives, negatives = labels.sum(), (~labels).sum()
    if positives == 0 or negatives == 0:
        raise UndefinedMetricError(
            f"rates need both true arcs and non-arcs, got {positives} and {negatives}"
        )
    tp = (predicted & labels).sum()
    fp = (predicted & ~labels).sum()
    return float(tp / positives), float(fp / negatives)


def roc_auc(W_learned, truth) -> float:
    """Area under the ROC curve of |W| scores over ordered pairs u != v.

    Uses the Mann-Whitney rank statistic with midranks for ties, which equals
    the trapezoidal area under the threshold sweep.
    """
    W = as_square(W_learned, "W_learned").astype(float)
    truth = as_binary(truth)
    if W.shape != truth.shape:
        raise ShapeMismatchError(f"weights {W.shape} and truth {truth.shape} differ in size")
    scores, labels = _off_diagonal(np.abs(W)), _off_diagonal(truth)
    positives = int(labels.sum())
    negatives = labels.size - positives
    if positives == 0 or negatives == 0:
        raise UndefinedMetricError(
            f"AUC needs both true arcs and non-arcs, got {positives} and {negatives}"
        )
    ranks = rankdata(scores)
    u_statistic = ranks[labels].sum() - positives * (positives + 1) / 2.0
    return float(u_statistic / (positives * negatives))
