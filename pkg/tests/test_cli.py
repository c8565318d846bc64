import json

import pandas as pd
import pytest

from cosmo_dag.cli import main as cli_main
from cosmo_dag.cli.bench import BENCH_COLUMNS, bench_epoch_time
from cosmo_dag.cli.config import OUTPUT_ENV, PRESETS, RunConfig
from cosmo_dag.cli.experiment import (
    AGGREGATE_FILE,
    CONFIG_FILE,
    build_model,
    load_seed_record,
    run_experiment,
    seed_dir,
)
from cosmo_dag.core.errors import InvalidConfigError, NumericalAbortError
from cosmo_dag.evaluation.report import aggregate
from cosmo_dag.models.linear import CosmoParams, NocurlParams
from cosmo_dag.models.nonlinear import NonlinearParams


@pytest.fixture
def smoke(tmp_path):
    return RunConfig.resolve(preset="smoke", overrides={"out": str(tmp_path), "name": "smoke"})


class TestRunConfig:
    """Layered configuration"""

    def test_defaults(self, monkeypatch):
        monkeypatch.delenv(OUTPUT_ENV, raising=False)
        cfg = RunConfig()
        assert (cfg.lr, cfg.lambda1, cfg.lambda2, cfg.lambda_p) == (5.5e-3, 5.5e-4, 3e-3, 2e-3)
        assert (cfg.t_start, cfg.t_end, cfg.eps, cfg.omega) == (0.45, 7.5e-4, 1.25e-2, 0.3)
        assert (cfg.batch_size, cfg.epochs, cfg.n, cfg.d) == (64, 2000, 1000, 30)
        assert cfg.out == "results"

    def test_output_root_from_environment(self, monkeypatch, tmp_path):
        monkeypatch.setenv(OUTPUT_ENV, str(tmp_path))
        assert RunConfig().run_dir == tmp_path / "run"

    def test_layers(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"d": 12, "epochs": 7, "noise": "gumbel"}))
        cfg = RunConfig.resolve(preset="smoke", path=path, overrides={"epochs": 3})
        assert cfg.d == 12
        assert cfg.noise == "gumbel"
        assert cfg.epochs == 3
        assert cfg.n == PRESETS["smoke"]["n"]

    def test_resolved_config_round_trips(self, smoke, tmp_path):
        smoke.write(tmp_path / "again.json")
        assert RunConfig.from_file(tmp_path / "again.json") == smoke

    @pytest.mark.parametrize("overrides", [
        {"model": "notears"},
        {"seeds": []},
        {"seeds": [1, 1]},
        {"omega": 0.0},
        {"t_start": 1e-4},
        {"d": 5, "edge_factor": 4},
        {"data": "mlp", "noise": "gumbel"},
        {"name": "a/b"},
        {"workers": 0},
        {"colour": "red"},
        {"center": "false"},
        {"save_data": "no"},
        {"center": 1},
        {"epochs": 2.5},
        {"d": "5"},
        {"lr": "0.1"},
        {"seeds": [0.5]},
        {"seeds": 3},
        {"name": 7},
    ])
    def test_invalid(self, overrides):
        with pytest.raises(InvalidConfigError):
            RunConfig.resolve(preset="smoke", overrides=overrides)

    def test_mistyped_file_values(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"center": "false", "save_data": "no"}))
        with pytest.raises(InvalidConfigError, match="center"):
            RunConfig.resolve(preset="smoke", path=path)

    def test_integers_widen_to_float(self):
        cfg = RunConfig.resolve(preset="smoke", overrides={"lr": 1, "omega": 1})
        assert isinstance(cfg.lr, float) and cfg.lr == 1.0
        assert isinstance(cfg.omega, float)

    def test_unknown_preset(self):
        with pytest.raises(InvalidConfigError):
            RunConfig.resolve(preset="huge")

    def test_bad_json(self, tmp_path):
        (tmp_path / "cfg.json").write_text("{not json")
        with pytest.raises(InvalidConfigError):
            RunConfig.from_file(tmp_path / "cfg.json")

    def test_priority_penalty_ablation(self, smoke):
        from dataclasses import replace
        assert smoke.reg().lambda_p == 2e-3
        assert replace(smoke, model="cosmo-np").reg().lambda_p == 0.0

    def test_build_model(self, smoke):
        from dataclasses import replace
        assert isinstance(build_model(smoke, 5, 0), CosmoParams)
        assert isinstance(build_model(replace(smoke, model="cosmo-np"), 5, 0), CosmoParams)
        assert isinstance(build_model(replace(smoke, model="nocurl-u"), 5, 0), NocurlParams)
        model = build_model(replace(smoke, model="cosmo-mlp", hidden=4), 5, 0)
        assert isinstance(model, NonlinearParams) and model.hidden == 4


class TestRunExperiment:
    """Run directory contents"""

    def test_smoke_run_files(self, smoke):
        table = run_experiment(smoke)
        run_dir = smoke.run_dir
        assert (run_dir / CONFIG_FILE).exists()
        assert (run_dir / AGGREGATE_FILE).exists()
        directory = seed_dir(smoke, 0)
        for name in ("report.json", "timing.json", "history.csv", "W.csv"):
            assert (directory / name).exists()
        assert not (directory / "data").exists()
        assert len(table) == 1
        history = pd.read_csv(directory / "history.csv")
        assert len(history) == smoke.epochs
        W = pd.read_csv(directory / "W.csv")
        assert W.shape == (5, 5)

    def test_reports_are_byte_identical(self, smoke, tmp_path):
        from dataclasses import replace
        run_experiment(smoke)
        again = replace(smoke, name="again")
        run_experiment(again)
        first = (seed_dir(smoke, 0) / "report.json").read_bytes()
        second = (seed_dir(again, 0) / "report.json").read_bytes()
        assert first == second

    def test_aggregate_matches_seed_files(self, smoke):
        from dataclasses import replace
        cfg = replace(smoke, seeds=(0, 1, 2))
        run_experiment(cfg)
        records = [load_seed_record(cfg, seed) for seed in cfg.seeds]
        expected = aggregate(records)
        row = pd.read_csv(cfg.run_dir / AGGREGATE_FILE, float_precision="round_trip").iloc[0]
        for key, value in expected.items():
            assert row[key] == value
        assert row["model"] == "cosmo-linear" and row["graph"] == "SF"

    def test_parallel_workers_match_serial(self, smoke):
        from dataclasses import replace
        serial = replace(smoke, seeds=(0, 1), name="serial")
        parallel = replace(smoke, seeds=(0, 1), name="parallel", workers=2)
        run_experiment(serial)
        run_experiment(parallel)
        for seed in (0, 1):
            assert (seed_dir(serial, seed) / "report.json").read_bytes() == \
                (seed_dir(parallel, seed) / "report.json").read_bytes()

    def test_save_data(self, smoke):
        from dataclasses import replace
        cfg = replace(smoke, save_data=True)
        run_experiment(cfg)
        assert (seed_dir(cfg, 0) / "data" / "X.csv").exists()


class TestBench:
    def test_table(self, smoke):
        from dataclasses import replace
        table = bench_epoch_time([4, 8], replace(smoke, epochs=2), repetitions=2)
        assert table.columns == BENCH_COLUMNS
        assert table.column("d") == [4, 8]
        assert all(ms > 0 for ms in table.column("epoch_ms_mean"))

    def test_zero_repetitions(self, smoke):
        with pytest.raises(InvalidConfigError):
            bench_epoch_time([10], smoke, repetitions=0)

    def test_node_count_too_small(self, smoke):
        with pytest.raises(InvalidConfigError):
            bench_epoch_time([1], smoke, repetitions=1)


class TestMain:
    """Command-line entry point and exit codes"""

    def test_experiment(self, tmp_path, capsys):
        code = cli_main.main(["experiment", "--preset", "smoke", "--out", str(tmp_path), "--name", "cli"])
        assert code == 0
        assert (tmp_path / "cli" / AGGREGATE_FILE).exists()
        assert "auc_mean" in capsys.readouterr().out

    def test_flags_override_config_file(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"d": 6, "epochs": 9}))
        args = cli_main.build_parser().parse_args(
            ["train", "--preset", "smoke", "--config", str(path), "--epochs", "2", "--lambdap", "0.1", "--batch", "8"]
        )
        cfg = cli_main.resolve_config(args)
        assert (cfg.d, cfg.epochs, cfg.lambda_p, cfg.batch_size) == (6, 2, 0.1, 8)

    def test_generate_then_train_then_eval(self, tmp_path):
        out = str(tmp_path)
        assert cli_main.main(["generate", "--preset", "smoke", "--out", out, "--name", "gen"]) == 0
        data_dir = tmp_path / "gen" / "seed_0" / "data"
        assert (data_dir / "dataset.json").exists()

        assert cli_main.main(["train", "--preset", "smoke", "--out", out, "--name", "fit",
                              "--data", str(data_dir), "--epochs", "3"]) == 0
        config = json.loads((tmp_path / "fit" / CONFIG_FILE).read_text())
        assert config["epochs"] == 3 and config["d"] == 5
        weights = tmp_path / "fit" / "seed_0" / "W.csv"

        report_path = tmp_path / "eval.json"
        assert cli_main.main(["eval", "--weights", str(weights), "--truth", str(data_dir),
                              "--output", str(report_path)]) == 0
        report = json.loads(report_path.read_text())
        stored = json.loads((tmp_path / "fit" / "seed_0" / "report.json").read_text())
        assert report["auc"] == stored["auc"]
        assert report["nhd"] == stored["nhd"]

    def test_bench_writes_csv(self, tmp_path):
        code = cli_main.main(["bench", "--preset", "smoke", "--out", str(tmp_path), "--name", "b",
                              "--d-list", "4", "6", "--repetitions", "1"])
        assert code == 0
        assert list(pd.read_csv(tmp_path / "b" / "bench.csv").columns) == BENCH_COLUMNS

    def test_config_error_exit_code(self, tmp_path):
        assert cli_main.main(["experiment", "--preset", "smoke", "--out", str(tmp_path), "--t-end", "1.0"]) == 2

    def test_numeric_abort_exit_code(self, tmp_path, monkeypatch):
        def explode(cfg):
            raise NumericalAbortError(4, 0.01, {"H": float("inf")})

        monkeypatch.setattr(cli_main, "run_experiment", explode)
        assert cli_main.main(["experiment", "--preset", "smoke", "--out", str(tmp_path)]) == 3

    def test_io_error_exit_code(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        assert cli_main.main(["experiment", "--preset", "smoke", "--out", str(blocker)]) == 4

    def test_corrupt_dataset_exit_code(self, tmp_path):
        out = str(tmp_path)
        assert cli_main.main(["generate", "--preset", "smoke", "--out", out, "--name", "gen"]) == 0
        data_dir = tmp_path / "gen" / "seed_0" / "data"
        (data_dir / "dataset.json").write_text("{truncated")
        assert cli_main.main(["train", "--preset", "smoke", "--out", out, "--data", str(data_dir)]) == 2
        assert cli_main.main(["eval", "--weights", str(data_dir / "X.csv"), "--truth", str(data_dir)]) == 2

    def test_dataset_without_arcs_exit_code(self, tmp_path):
        out = str(tmp_path)
        cli_main.main(["generate", "--preset", "smoke", "--out", out, "--name", "gen"])
        data_dir = tmp_path / "gen" / "seed_0" / "data"
        meta = json.loads((data_dir / "dataset.json").read_text())
        del meta["arcs"]
        (data_dir / "dataset.json").write_text(json.dumps(meta))
        weights = tmp_path / "W.csv"
        weights.write_text("w0,w1,w2,w3,w4\n" + "0,0,0,0,0\n" * 5)
        assert cli_main.main(["eval", "--weights", str(weights), "--truth", str(data_dir)]) == 2

    def test_non_numeric_weights_exit_code(self, tmp_path):
        weights = tmp_path / "W.csv"
        weights.write_text("w0,w1\nx,y\nz,q\n")
        truth = tmp_path / "truth.csv"
        truth.write_text("a0,a1\n0,1\n0,0\n")
        assert cli_main.main(["eval", "--weights", str(weights), "--truth", str(truth)]) == 2

    def test_missing_subcommand(self):
        with pytest.raises(SystemExit) as info:
            cli_main.main([])
        assert info.value.code == 2


class TestNumericalAbortError:
    def test_survives_pickling(self):
        import pickle
        error = pickle.loads(pickle.dumps(NumericalAbortError(3, 0.2, {"p": 1.0})))
        assert (error.epoch, error.temperature, error.grad_norms) == (3, 0.2, {"p": 1.0})
