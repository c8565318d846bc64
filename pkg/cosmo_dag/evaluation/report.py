"""
EvalReport - All recovery metrics of one learned graph, as JSON and CSV rows
"""
import json
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, List, Sequence

import numpy as np

from ..core.graph import as_binary, is_dag, threshold
from .metrics import roc_auc, structural_errors, tpr_fpr

DEFAULT_OMEGA = 0.3
AGGREGATE_METRICS = ("nhd", "tpr", "fpr", "auc", "wall_time_s")


@dataclass(frozen=True)
class EvalReport:
    """Recovery metrics at threshold omega plus the threshold-free AUC"""

    nhd: float
    tpr: float
    fpr: float
    auc: float
    omega: float
    true_pos: int
    false_pos: int
    missing: int
    extra: int
    reversed: int
    predicted_arcs: int
    true_arcs: int
    acyclic: bool

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        """Stable JSON encoding (sorted keys, two-space indent)"""
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def columns(cls) -> List[str]:
        """CSV header matching to_row()"""
        return [f.name for f in fields(cls)]

    def to_row(self) -> List[Any]:
        return [getattr(self, name) for name in self.columns()]

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EvalReport":
        return cls(**{name: data[name] for name in cls.columns()})


def evaluate(W_learned, truth, omega: float = DEFAULT_OMEGA) -> EvalReport:
    """Threshold W at omega and score it against the ground-truth arcs"""
    truth = as_binary(truth)
    pred = threshold(W_learned, omega)
    errors = structural_errors(pred, truth)
    tpr, fpr = tpr_fpr(pred, truth)
    off_diagonal = ~np.eye(truth.shape[0], dtype=bool)
    return EvalReport(
        nhd=errors.total / truth.shape[0],
        tpr=tpr,
        fpr=fpr,
        auc=roc_auc(W_learned, truth),
        omega=float(omega),
        true_pos=int((pred & truth & off_diagonal).sum()),
        false_pos=int((pred & ~truth & off_diagonal).sum()),
        missing=errors.missing,
        extra=errors.extra,
        reversed=errors.reversed,
        predicted_arcs=int(pred.sum()),
        true_arcs=int(truth.sum()),
        acyclic=is_dag(pred),
    )


def aggregate(records: Sequence[Dict[str, float]]) -> Dict[str, float]:
    """Mean and population standard deviation of each aggregate metric"""
    row: Dict[str, float] = {"runs": len(records)}
    for name in AGGREGATE_METRICS:
        values = np.array([record[name] for record in records], dtype=float)
        row[f"{name}_mean"] = float(values.mean())
        row[f"{name}_std"] = float(values.std())
    return row
