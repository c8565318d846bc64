"""
Experiment - Multi-seed runs: simulate, train, evaluate and write result files

Run directory layout:
    <out>/<name>/run_config.json      resolved RunConfig
    <out>/<name>/aggregate.csv        one row, mean and std over seeds
    <out>/<name>/seed_<s>/report.json EvalReport plus the seed
    <out>/<name>/seed_<s>/timing.json wall time of the fitting loop in seconds
    <out>/<name>/seed_<s>/history.csv per-epoch training history
    <out>/<name>/seed_<s>/W.csv       learned weighted adjacency
    <out>/<name>/seed_<s>/data/       dataset, with --save-data
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from joblib import Parallel, delayed

from ..data.io import save_dataset, save_matrix
from ..data.synthetic import Dataset, simulate
from ..evaluation.report import EvalReport, aggregate, evaluate
from ..evaluation.table import ResultTable
from ..models.base import StructureModel
from ..models.linear import CosmoParams, NocurlParams
from ..models.nonlinear import NonlinearParams
from ..training.trainer import TrainResult, train
from .config import RunConfig

logger = logging.getLogger(__name__)

CONFIG_FILE = "run_config.json"
AGGREGATE_FILE = "aggregate.csv"
REPORT_FILE = "report.json"
TIMING_FILE = "timing.json"
HISTORY_FILE = "history.csv"
WEIGHTS_FILE = "W.csv"
IDENTITY_COLUMNS = ("name", "model", "graph", "edge_factor", "d", "noise", "data", "n")


def seed_dir(cfg: RunConfig, seed: int) -> Path:
    return cfg.run_dir / f"seed_{seed}"


def build_model(cfg: RunConfig, d: int, seed: int) -> StructureModel:
    """Freshly initialized model named by cfg.model"""
    rng = np.random.default_rng(np.random.SeedSequence([seed, 1]))
    if cfg.model == "nocurl-u":
        return NocurlParams.initialize(d, rng)
    if cfg.model == "cosmo-mlp":
        return NonlinearParams.initialize(d, cfg.hidden, cfg.orientation(), rng)
    return CosmoParams.initialize(d, cfg.orientation(), rng)


def make_dataset(cfg: RunConfig, seed: int) -> Dataset:
    return simulate(cfg.graph_spec(seed), cfg.noise_spec(), cfg.n, seed,
                    kind=cfg.data, hidden=cfg.generator_hidden)


def fit(cfg: RunConfig, dataset: Dataset, seed: int) -> TrainResult:
    """Train the configured model on `dataset`"""
    model = build_model(cfg, dataset.d, seed)
    return train(model, dataset, cfg.train_config(seed), cfg.schedule())


def _write_json(data: Dict[str, Any], path: Path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(data, indent=2, sort_keys=True) + "\n")


def run_seed(cfg: RunConfig, seed: int, dataset: Optional[Dataset] = None) -> Dict[str, Any]:
    """Simulate (unless `dataset` is given), train and evaluate one seed; returns its aggregate record"""
    directory = seed_dir(cfg, seed)
    directory.mkdir(parents=True, exist_ok=True)
    logger.info("seed %d: %s on %s%d/%s d=%d", seed, cfg.model, cfg.graph, cfg.edge_factor, cfg.noise, cfg.d)

    if dataset is None:
        dataset = make_dataset(cfg, seed)
    if cfg.save_data:
        save_dataset(dataset, directory / "data")
    result = fit(cfg, dataset, seed)
    W = result.model.weights()
    report = evaluate(W, dataset.binary, cfg.omega)
    wall_time_s = round(result.wall_time_s, 3)

    _write_json({"seed": seed, **report.to_dict()}, directory / REPORT_FILE)
    _write_json({"seed": seed, "wall_time_s": wall_time_s}, directory / TIMING_FILE)
    result.write_history(directory / HISTORY_FILE)
    save_matrix(W, directory / WEIGHTS_FILE, prefix="w")
    logger.info("seed %d: nhd=%.3f tpr=%.3f auc=%.3f in %.1fs", seed, report.nhd, report.tpr, report.auc, wall_time_s)
    return {"seed": seed, **report.to_dict(), "wall_time_s": wall_time_s}


def load_seed_record(cfg: RunConfig, seed: int) -> Dict[str, Any]:
    """Re-read the per-seed report and timing files"""
    directory = seed_dir(cfg, seed)
    with open(directory / REPORT_FILE, encoding="utf-8") as f:
        report = EvalReport.from_dict(json.load(f))
    with open(directory / TIMING_FILE, encoding="utf-8") as f:
        wall_time_s = json.load(f)["wall_time_s"]
    return {"seed": seed, **report.to_dict(), "wall_time_s": wall_time_s}


def aggregate_row(cfg: RunConfig, records: List[Dict[str, Any]]) -> Dict[str, Any]:
    row = {key: getattr(cfg, key) for key in IDENTITY_COLUMNS}
    row.update(aggregate(records))
    return row


def run_experiment(cfg: RunConfig, workers: Optional[int] = None) -> ResultTable:
    """Run every seed of `cfg` and write the run directory; returns the aggregate table"""
    workers = workers or cfg.workers
    cfg.run_dir.mkdir(parents=True, exist_ok=True)
    cfg.write(cfg.run_dir / CONFIG_FILE)
    logger.info("experiment %s: %d seed(s) with %d worker(s) into %s",
                cfg.name, len(cfg.seeds), workers, cfg.run_dir)

    if workers > 1:
        records = Parallel(n_jobs=workers)(delayed(run_seed)(cfg, seed) for seed in cfg.seeds)
    else:
        records = [run_seed(cfg, seed) for seed in cfg.seeds]

    table = ResultTable(rows=[aggregate_row(cfg, records)])
    table.to_csv(cfg.run_dir / AGGREGATE_FILE)
    return table
