"""
Evaluation - structure recovery metrics, reports and result tables
"""

from .metrics import StructuralErrors, nhd, roc_auc, structural_errors, tpr_fpr
from .report import AGGREGATE_METRICS, DEFAULT_OMEGA, EvalReport, aggregate, evaluate
from .table import ResultTable

__all__ = [
    "StructuralErrors",
    "nhd",
    "roc_auc",
    "structural_errors",
    "tpr_fpr",
    "AGGREGATE_METRICS",
    "DEFAULT_OMEGA",
    "EvalReport",
    "aggregate",
    "evaluate",
    "ResultTable",
]
