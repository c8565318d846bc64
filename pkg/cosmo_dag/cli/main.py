"""
Command-line interface - generate, train, experiment, bench and eval

Exit codes: 0 success, 2 invalid configuration or input, 3 numerical abort,
4 I/O error.
"""
import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional

from .. import __version__
from ..core.errors import CosmoError, NumericalAbortError
from ..data.io import load_dataset, load_matrix, save_dataset
from ..data.synthetic import DATA_KINDS, GRAPH_KINDS, NOISE_FAMILIES, Dataset
from ..evaluation.report import evaluate
from .bench import bench_epoch_time
from .config import MODELS, PRESETS, RunConfig
from .experiment import CONFIG_FILE, make_dataset, run_experiment, run_seed, seed_dir

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# flag dest -> RunConfig key
OVERRIDES = {
    "name": "name",
    "d": "d",
    "graph": "graph",
    "edge_factor": "edge_factor",
    "noise": "noise",
    "data_kind": "data",
    "n": "n",
    "model": "model",
    "hidden": "hidden",
    "epochs": "epochs",
    "batch": "batch_size",
    "lr": "lr",
    "lambda1": "lambda1",
    "lambda2": "lambda2",
    "lambdap": "lambda_p",
    "eps": "eps",
    "t_start": "t_start",
    "t_end": "t_end",
    "curve": "curve",
    "omega": "omega",
    "seeds": "seeds",
    "out": "out",
    "workers": "workers",
    "save_data": "save_data",
    "log_every": "log_every",
}


def _run_options() -> argparse.ArgumentParser:
    """Options shared by every subcommand that resolves a RunConfig"""
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("run configuration")
    group.add_argument("--config", type=Path, help="JSON file of flat RunConfig keys")
    group.add_argument("--preset", choices=sorted(PRESETS), help="named starting configuration")
    group.add_argument("--name", help="run directory name under --out")
    group.add_argument("--d", type=int, help="number of nodes")
    group.add_argument("--graph", choices=GRAPH_KINDS, help="random graph family")
    group.add_argument("--edge-factor", dest="edge_factor", type=int, help="expected arcs per node (k)")
    group.add_argument("--noise", choices=NOISE_FAMILIES, help="exogenous noise family")
    group.add_argument("--data-kind", dest="data_kind", choices=DATA_KINDS, help="linear or MLP generator")
    group.add_argument("--n", type=int, help="number of samples")
    group.add_argument("--model", choices=MODELS, help="structure learner")
    group.add_argument("--hidden", type=int, help="hidden width of the nonlinear learner")
    group.add_argument("--epochs", type=int)
    group.add_argument("--batch", type=int, help="mini-batch size")
    group.add_argument("--lr", type=float, help="Adam learning rate")
    group.add_argument("--lambda1", type=float, help="L1 penalty on H")
    group.add_argument("--lambda2", type=float, help="L2 penalty on H")
    group.add_argument("--lambdap", type=float, help="L2 penalty on the priorities")
    group.add_argument("--eps", type=float, help="orientation shift")
    group.add_argument("--t-start", dest="t_start", type=float, help="initial temperature")
    group.add_argument("--t-end", dest="t_end", type=float, help="final temperature")
    group.add_argument("--curve", help="annealing curve: cosine, linear or geometric")
    group.add_argument("--omega", type=float, help="evaluation threshold")
    group.add_argument("--seeds", type=int, nargs="+", help="one run per seed")
    group.add_argument("--out", help="output root (default: $COSMO_DAG_OUTPUT or ./results)")
    group.add_argument("--workers", type=int, help="parallel seed workers")
    group.add_argument("--save-data", dest="save_data", action="store_const", const=True,
                       help="also store each generated dataset")
    group.add_argument("--log-every", dest="log_every", type=int, help="epochs between progress logs, 0 to mute")
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cosmo-dag",
        description="Constraint-free acyclic structure learning experiments",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for progress, -vv for debug output")
    commands = parser.add_subparsers(dest="command", required=True)
    options = _run_options()

    commands.add_parser("generate", parents=[options], help="simulate and store datasets only")

    train = commands.add_parser("train", parents=[options], help="one training run")
    train.add_argument("--data", type=Path, help="dataset directory written by generate")

    commands.add_parser("experiment", parents=[options], help="multi-seed experiment with aggregates")

    bench = commands.add_parser("bench", parents=[options], help="mean per-epoch time against d")
    bench.add_argument("--d-list", dest="d_list", type=int, nargs="+", default=[50, 100, 200])
    bench.add_argument("--repetitions", type=int, default=3)

    score = commands.add_parser("eval", help="score a saved weight matrix against a saved truth")
    score.add_argument("--weights", type=Path, required=True, help="learned W as CSV")
    score.add_argument("--truth", type=Path, required=True,
                       help="dataset directory, or a CSV adjacency matrix")
    score.add_argument("--omega", type=float, default=0.3)
    score.add_argument("--output", type=Path, help="write the report JSON here")
    return parser


def configure_logging(verbosity: int):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT)


def collect_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """RunConfig keys for the flags given on the command line"""
    return {
        key: getattr(args, dest)
        for dest, key in OVERRIDES.items()
        if getattr(args, dest, None) is not None
    }


def resolve_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig.resolve(preset=args.preset, path=args.config, overrides=collect_overrides(args))


def _print_table(frame):
    print(frame.to_string(index=False))


def cmd_generate(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    for seed in cfg.seeds:
        directory = save_dataset(make_dataset(cfg, seed), seed_dir(cfg, seed) / "data")
        print(directory)
    return EXIT_OK


def _config_for_dataset(cfg: RunConfig, dataset: Dataset) -> RunConfig:
    """Align the data fields of `cfg` with a loaded dataset"""
    fields: Dict[str, Any] = {"d": dataset.d, "n": dataset.n, "noise": dataset.noise.family, "data": dataset.kind}
    if dataset.graph is not None:
        fields.update(graph=dataset.graph.kind, edge_factor=dataset.graph.edge_factor)
    else:
        fields["edge_factor"] = min(cfg.edge_factor, (dataset.d - 1) // 2)
    return replace(cfg, **fields)


def cmd_train(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    dataset: Optional[Dataset] = None
    if args.data is not None:
        dataset = load_dataset(args.data)
        cfg = _config_for_dataset(cfg, dataset)
    seed = cfg.seeds[0]
    cfg = replace(cfg, seeds=(seed,))
    cfg.run_dir.mkdir(parents=True, exist_ok=True)
    cfg.write(cfg.run_dir / CONFIG_FILE)
    record = run_seed(cfg, seed, dataset)
    print(json.dumps(record, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_experiment(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    table = run_experiment(cfg)
    _print_table(table.to_frame())
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    table = bench_epoch_time(args.d_list, cfg, args.repetitions)
    cfg.run_dir.mkdir(parents=True, exist_ok=True)
    table.to_csv(cfg.run_dir / "bench.csv")
    _print_table(table.to_frame())
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    W = load_matrix(args.weights)
    if args.truth.is_dir():
        truth = load_dataset(args.truth).binary
    else:
        truth = load_matrix(args.truth) != 0
    report = evaluate(W, truth, args.omega)
    if args.output is not None:
        args.output.write_text(report.to_json() + "\n", encoding="utf-8")
    print(report.to_json())
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "train": cmd_train,
    "experiment": cmd_experiment,
    "bench": cmd_bench,
    "eval": cmd_eval,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except NumericalAbortError as e:
        logger.error("training aborted: %s", e)
        return EXIT_NUMERIC
    except CosmoError as e:
        logger.error("%s", e)
        return EXIT_CONFIG
    except OSError as e:
        logger.error("I/O error: %s", e)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
