"""
Bench - Mean per-epoch training time for increasing numbers of nodes
"""
import logging
from dataclasses import replace
from typing import Sequence

import numpy as np

from ..core.errors import InvalidConfigError
from ..evaluation.table import ResultTable
from ..training.trainer import train
from .config import RunConfig
from .experiment import build_model, make_dataset

logger = logging.getLogger(__name__)

BENCH_COLUMNS = ["model", "d", "epochs", "repetitions", "epoch_ms_mean", "epoch_ms_std"]


def bench_epoch_time(d_list: Sequence[int], cfg: RunConfig, repetitions: int = 3) -> ResultTable:
    """Time the fitting loop only; data generation and evaluation are excluded"""
    if repetitions < 1:
        raise InvalidConfigError(f"repetitions must be at least 1, got {repetitions}")
    if not d_list:
        raise InvalidConfigError("bench needs at least one node count")
    table = ResultTable(columns=BENCH_COLUMNS)
    seed = cfg.seeds[0]
    for d in d_list:
        if d < 2:
            raise InvalidConfigError(f"bench node counts must be at least 2, got {d}")
        cfg_d = replace(cfg, d=d, edge_factor=min(cfg.edge_factor, (d - 1) // 2))
        dataset = make_dataset(cfg_d, seed)
        tc = cfg_d.train_config(seed, track_acyclicity=False)
        samples = []
        for _ in range(repetitions):
            result = train(build_model(cfg_d, d, seed), dataset, tc, cfg_d.schedule())
            samples.append(result.wall_time_s * 1000.0 / cfg_d.epochs)
        times = np.array(samples)
        logger.info("d=%d: %.2f ms/epoch over %d repetition(s)", d, times.mean(), repetitions)
        table.add_row({
            "model": cfg.model,
            "d": d,
            "epochs": cfg_d.epochs,
            "repetitions": repetitions,
            "epoch_ms_mean": float(times.mean()),
            "epoch_ms_std": float(times.std()),
        })
    return table
