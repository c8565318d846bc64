"""
Synthetic data generation and dataset files
"""

from .synthetic import (
    DATA_KINDS,
    GRAPH_KINDS,
    NOISE_FAMILIES,
    Dataset,
    GraphSpec,
    NoiseSpec,
    random_dag,
    random_weights,
    sample_linear_sem,
    sample_mlp_sem,
    simulate,
)
from .io import load_dataset, load_matrix, save_dataset, save_matrix

__all__ = [
    "DATA_KINDS",
    "GRAPH_KINDS",
    "NOISE_FAMILIES",
    "Dataset",
    "GraphSpec",
    "NoiseSpec",
    "random_dag",
    "random_weights",
    "sample_linear_sem",
    "sample_mlp_sem",
    "simulate",
    "load_dataset",
    "load_matrix",
    "save_dataset",
    "save_matrix",
]
