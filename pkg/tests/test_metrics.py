import json

import numpy as np
import pytest

from cosmo_dag.core.errors import ShapeMismatchError, UndefinedMetricError
from cosmo_dag.core.graph import from_arcs
from cosmo_dag.data.synthetic import GraphSpec, random_dag
from cosmo_dag.evaluation import (
    AGGREGATE_METRICS,
    EvalReport,
    ResultTable,
    aggregate,
    evaluate,
    nhd,
    roc_auc,
    structural_errors,
    tpr_fpr,
)


def sweep_auc(scores, labels):
    """Trapezoid area under the ROC curve traced by every distinct cutoff"""
    positives, negatives = labels.sum(), (~labels).sum()
    points = [(0.0, 0.0)]
    for cutoff in np.unique(scores)[::-1]:
        predicted = scores >= cutoff
        points.append(((predicted & ~labels).sum() / negatives, (predicted & labels).sum() / positives))
    fpr, tpr = np.array(points).T
    return float(np.sum(np.diff(fpr) * (tpr[1:] + tpr[:-1]) / 2.0))


class TestStructuralErrors:
    """Missing, extra and reversed arcs"""

    def test_identical(self, figure_dag):
        errors = structural_errors(figure_dag, figure_dag)
        assert (errors.missing, errors.extra, errors.reversed) == (0, 0, 0)

    def test_pure_reversal(self):
        errors = structural_errors(from_arcs(2, [(1, 0)]), from_arcs(2, [(0, 1)]))
        assert (errors.missing, errors.extra, errors.reversed) == (0, 0, 1)

    def test_three_node_example(self):
        truth = from_arcs(3, [(0, 1), (1, 2)])
        pred = from_arcs(3, [(0, 1), (2, 1), (0, 2)])
        errors = structural_errors(pred, truth)
        assert (errors.missing, errors.extra, errors.reversed) == (0, 1, 1)
        assert nhd(pred, truth) == pytest.approx(2 / 3)

    def test_empty_prediction(self):
        truth = random_dag(GraphSpec(d=20, kind="SF", edge_factor=2, seed=0))
        assert nhd(np.zeros_like(truth), truth) == pytest.approx(truth.sum() / 20)

    def test_size_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            structural_errors(np.zeros((2, 2)), np.zeros((3, 3)))

    def test_relabeling_symmetry(self, rng):
        for _ in range(20):
            truth = random_dag(GraphSpec(d=8, edge_factor=2, seed=int(rng.integers(1000))))
            pred = rng.uniform(size=(8, 8)) < 0.2
            perm = rng.permutation(8)
            assert nhd(pred[np.ix_(perm, perm)], truth[np.ix_(perm, perm)]) == nhd(pred, truth)

    def test_loose_cap(self, rng):
        for _ in range(50):
            d = int(rng.integers(2, 10))
            pred = rng.uniform(size=(d, d)) < rng.uniform()
            truth = rng.uniform(size=(d, d)) < rng.uniform()
            np.fill_diagonal(pred, False)
            np.fill_diagonal(truth, False)
            assert 0 <= nhd(pred, truth) <= d - 1 + 1e-12


class TestRates:
    def test_identical(self, figure_dag):
        assert tpr_fpr(figure_dag, figure_dag) == (1.0, 0.0)

    def test_reversed_single_arc(self):
        assert tpr_fpr(from_arcs(2, [(1, 0)]), from_arcs(2, [(0, 1)])) == (0.0, 1.0)

    def test_empty_prediction(self, figure_dag):
        assert tpr_fpr(np.zeros_like(figure_dag), figure_dag) == (0.0, 0.0)

    def test_degenerate_truth(self):
        with pytest.raises(UndefinedMetricError):
            tpr_fpr(np.zeros((3, 3)), np.zeros((3, 3)))


class TestRocAuc:
    """Mann-Whitney AUC over ordered pairs"""

    def test_perfect_scores(self, figure_dag):
        assert roc_auc(figure_dag.astype(float), figure_dag) == 1.0

    def test_all_ties(self, figure_dag):
        assert roc_auc(np.ones((5, 5)), figure_dag) == 0.5

    def test_matches_threshold_sweep(self, rng):
        for _ in range(200):
            d = int(rng.integers(3, 9))
            truth = rng.uniform(size=(d, d)) < 0.3
            np.fill_diagonal(truth, False)
            labels = truth[~np.eye(d, dtype=bool)]
            if labels.all() or not labels.any():
                continue
            W = rng.normal(size=(d, d))
            W[rng.uniform(size=(d, d)) < 0.3] = 0.0
            W = np.round(W, 1)
            scores = np.abs(W)[~np.eye(d, dtype=bool)]
            assert roc_auc(W, truth) == pytest.approx(sweep_auc(scores, labels), abs=1e-12)

    def test_monotone_transform_invariance(self, rng, figure_dag):
        W = rng.uniform(size=(5, 5))
        base = roc_auc(W, figure_dag)
        assert roc_auc(W ** 3, figure_dag) == base
        assert roc_auc(2.0 * W, figure_dag) == base

    def test_sign_is_ignored(self, rng, figure_dag):
        W = rng.normal(size=(5, 5))
        assert roc_auc(-W, figure_dag) == roc_auc(W, figure_dag)

    def test_self_pairs_excluded(self, figure_dag):
        W = figure_dag.astype(float)
        np.fill_diagonal(W, 100.0)
        assert roc_auc(W, figure_dag) == 1.0

    def test_undefined(self):
        with pytest.raises(UndefinedMetricError):
            roc_auc(np.ones((3, 3)), np.zeros((3, 3)))
        with pytest.raises(UndefinedMetricError):
            roc_auc(np.ones((2, 2)), ~np.eye(2, dtype=bool))


class TestEvaluate:
    """EvalReport and its serializations"""

    def test_perfect_recovery(self, figure_dag):
        report = evaluate(figure_dag * 1.5, figure_dag, omega=0.3)
        assert report.nhd == 0.0
        assert (report.tpr, report.fpr, report.auc) == (1.0, 0.0, 1.0)
        assert report.true_pos == report.true_arcs == report.predicted_arcs == 6
        assert report.acyclic

    def test_counts_are_consistent(self, rng, figure_dag):
        W = rng.normal(size=(5, 5))
        report = evaluate(W, figure_dag, omega=0.3)
        assert report.tpr == pytest.approx(report.true_pos / report.true_arcs)
        assert report.nhd == pytest.approx((report.missing + report.extra + report.reversed) / 5)
        assert report.omega == 0.3

    def test_cyclic_prediction_is_flagged(self, figure_dag):
        W = figure_dag.astype(float)
        W[0, 3] = 1.0
        assert not evaluate(W, figure_dag).acyclic

    def test_json_and_row(self, figure_dag):
        report = evaluate(figure_dag * 0.9, figure_dag)
        data = json.loads(report.to_json())
        assert list(data) == sorted(data)
        assert EvalReport.from_dict(data) == report
        assert dict(zip(EvalReport.columns(), report.to_row())) == report.to_dict()


class TestAggregate:
    def test_mean_and_population_std(self):
        records = [
            {"nhd": 1.0, "tpr": 0.5, "fpr": 0.1, "auc": 0.9, "wall_time_s": 2.0},
            {"nhd": 3.0, "tpr": 0.7, "fpr": 0.3, "auc": 0.7, "wall_time_s": 4.0},
        ]
        row = aggregate(records)
        assert row["runs"] == 2
        assert row["nhd_mean"] == 2.0 and row["nhd_std"] == 1.0
        assert row["auc_mean"] == pytest.approx(0.8) and row["auc_std"] == pytest.approx(0.1)
        assert set(row) == {"runs"} | {f"{m}_{s}" for m in AGGREGATE_METRICS for s in ("mean", "std")}


class TestResultTable:
    def test_columns_grow_in_order(self):
        table = ResultTable(columns=["d"])
        table.add_row({"d": 100, "ms": 3.5})
        table.add_row({"d": 50, "model": "x"})
        assert table.columns == ["d", "ms", "model"]
        assert table.column("model") == [None, "x"]
        assert len(table) == 2

    def test_sort_by_column(self):
        table = ResultTable(rows=[{"d": 200}, {"d": 50}, {"d": 100}])
        table.sort_by_column("d")
        assert table.column("d") == [50, 100, 200]
        table.sort_by_column("d", ascending=False)
        assert table.column("d") == [200, 100, 50]

    def test_mixed_types_sort_as_strings(self):
        table = ResultTable(rows=[{"k": 2}, {"k": "a"}, {"k": 10}])
        table.sort_by_column("k")
        assert table.column("k") == [10, 2, "a"]

    def test_csv_round_trip(self, tmp_path):
        table = ResultTable(rows=[{"d": 10, "auc": 0.1 + 0.2}, {"d": 20, "auc": 1 / 3}])
        table.to_csv(tmp_path / "t.csv")
        loaded = ResultTable.read_csv(tmp_path / "t.csv")
        assert loaded.columns == ["d", "auc"]
        assert loaded.column("auc") == [0.1 + 0.2, 1 / 3]
