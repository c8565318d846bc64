"""
Experiment harness - run configuration, multi-seed driver, timing and CLI
"""

from .config import MODELS, OUTPUT_ENV, PRESETS, RunConfig, default_output_root
from .experiment import build_model, load_seed_record, run_experiment, run_seed
from .bench import bench_epoch_time

__all__ = [
    "MODELS",
    "OUTPUT_ENV",
    "PRESETS",
    "RunConfig",
    "default_output_root",
    "build_model",
    "load_seed_record",
    "run_experiment",
    "run_seed",
    "bench_epoch_time",
]
