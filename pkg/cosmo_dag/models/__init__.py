"""
Structure models - linear COSMO, the NOCURL-U baseline and nonlinear COSMO
"""

from .base import RegWeights, StructureModel
from .linear import CosmoParams, NocurlParams, loss_and_grads, nocurlu_loss_and_grads, predict
from .nonlinear import LEARNER_HIDDEN, NonlinearParams, nl_loss_and_grads, nl_predict

__all__ = [
    "RegWeights",
    "StructureModel",
    "CosmoParams",
    "NocurlParams",
    "loss_and_grads",
    "nocurlu_loss_and_grads",
    "predict",
    "LEARNER_HIDDEN",
    "NonlinearParams",
    "nl_loss_and_grads",
    "nl_predict",
]
