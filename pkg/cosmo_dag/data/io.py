"""
Dataset I/O - CSV observation matrices with a JSON sidecar

Layout of a dataset directory:
    X.csv         header x0..x{d-1}, one row per observation, floats as %.17g
    dataset.json  format_version, kind, n, d, seed, graph, noise and the
                  ground-truth arc list [[u, v, weight], ...]
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np
import pandas as pd

from ..core.errors import CosmoError, InvalidInputError
from ..core.graph import as_square
from .synthetic import Dataset, GraphSpec, NoiseSpec

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
FLOAT_FORMAT = "%.17g"
DATA_FILE = "X.csv"
META_FILE = "dataset.json"

PathLike = Union[str, Path]


def save_matrix(matrix: np.ndarray, path: PathLike, prefix: str = "x"):
    """Write a 2-D array as CSV with a generated column header"""
    matrix = np.asarray(matrix, dtype=float)
    columns = [f"{prefix}{i}" for i in range(matrix.shape[1])]
    pd.DataFrame(matrix, columns=columns).to_csv(path, index=False, float_format=FLOAT_FORMAT)


def load_matrix(path: PathLike) -> np.ndarray:
    """Read a CSV written by save_matrix"""
    try:
        return pd.read_csv(path, float_precision="round_trip").to_numpy(dtype=float)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, ValueError) as e:
        raise InvalidInputError(f"{path} is not a numeric CSV matrix: {e}") from e


def dataset_metadata(dataset: Dataset) -> Dict[str, Any]:
    """JSON-ready description of a dataset, without the observations"""
    W = dataset.W_true
    rows, cols = np.nonzero(W)
    graph = None
    if dataset.graph is not None:
        graph = {
            "d": dataset.graph.d,
            "kind": dataset.graph.kind,
            "edge_factor": dataset.graph.edge_factor,
            "seed": dataset.graph.seed,
        }
    return {
        "format_version": FORMAT_VERSION,
        "kind": dataset.kind,
        "n": dataset.n,
        "d": dataset.d,
        "seed": dataset.seed if isinstance(dataset.seed, int) else None,
        "graph": graph,
        "noise": dataset.noise.family,
        "arcs": [[int(u), int(v), float(W[u, v])] for u, v in zip(rows, cols)],
    }


def save_dataset(dataset: Dataset, directory: PathLike) -> Path:
    """Write X.csv and dataset.json into `directory`"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    save_matrix(dataset.X, directory / DATA_FILE)
    with open(directory / META_FILE, "w", encoding="utf-8") as f:
        json.dump(dataset_metadata(dataset), f, indent=2, sort_keys=True)
    logger.info("saved %s dataset (n=%d, d=%d) to %s", dataset.kind, dataset.n, dataset.d, directory)
    return directory


def weights_from_arcs(d: int, arc_list) -> np.ndarray:
    """Dense weight matrix from [u, v, weight] triples"""
    W = np.zeros((d, d))
    for u, v, weight in arc_list:
        W[int(u), int(v)] = float(weight)
    return W


def load_dataset(directory: PathLike) -> Dataset:
    """Read a dataset directory written by save_dataset"""
    directory = Path(directory)
    meta_path = directory / META_FILE
    with open(meta_path, encoding="utf-8") as f:
        try:
            meta = json.load(f)
        except json.JSONDecodeError as e:
            raise InvalidInputError(f"{meta_path} is not valid JSON: {e}") from e
    if not isinstance(meta, dict):
        raise InvalidInputError(f"{meta_path} must hold a JSON object")
    if meta.get("format_version") != FORMAT_VERSION:
        raise InvalidInputError(f"unsupported dataset format version {meta.get('format_version')!r}")
    X = load_matrix(directory / DATA_FILE)
    try:
        if X.shape != (meta["n"], meta["d"]):
            raise InvalidInputError(f"X.csv has shape {X.shape}, metadata says {(meta['n'], meta['d'])}")
        graph = GraphSpec(**meta["graph"]) if meta.get("graph") else None
        W_true = weights_from_arcs(meta["d"], meta["arcs"])
        noise = NoiseSpec(meta["noise"])
        kind = meta["kind"]
    except CosmoError:
        raise
    except KeyError as e:
        raise InvalidInputError(f"{meta_path} lacks the {e.args[0]!r} entry") from e
    except (TypeError, ValueError, IndexError) as e:
        raise InvalidInputError(f"{meta_path} is malformed: {e}") from e
    return Dataset(
        X=X,
        W_true=as_square(W_true, "W_true"),
        noise=noise,
        kind=kind,
        graph=graph,
        seed=meta.get("seed"),
    )
