from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import mann_whitney_auc

from tweetstock.evaluate import (
    METRIC_COLUMNS,
    auc_score,
    classification_report,
    confusion_matrix,
    evaluate_predictions,
    format_key_values,
    format_report,
    format_results_table,
    one_vs_rest_curves,
    read_roc_points,
    roc_curve,
    roc_points,
    write_roc_points,
)


def report_from(counts, classes=("a", "b")):
    truth, pred = [], []
    for i, row in enumerate(counts):
        for j, n in enumerate(row):
            truth += [classes[i]] * n
            pred += [classes[j]] * n
    return evaluate_predictions(truth, pred, classes)


class TestConfusion:
    def test_counts(self):
        cm = confusion_matrix([1, 0, 2, 1], [1, 2, 2, 0], (1, 0, 2))
        np.testing.assert_array_equal(cm.counts, [[1, 1, 0], [0, 0, 1], [0, 0, 1]])
        assert cm.total == 4

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            confusion_matrix([1, 0], [1], (1, 0))

    def test_unknown_label(self):
        with pytest.raises(ValueError, match="7"):
            confusion_matrix([1, 7], [1, 1], (1, 0))

    def test_numpy_labels(self):
        cm = confusion_matrix(np.array([0, 1]), np.array([0, 0]), (0, 1))
        assert cm.counts.tolist() == [[1, 0], [1, 0]]


class TestMetrics:
    def test_golden_two_class(self):
        r = report_from([[8, 2], [3, 7]])
        p = (Fraction(8, 11) + Fraction(7, 9)) / 2
        rec = Fraction(3, 4)
        f_a = 2 * Fraction(8, 11) * Fraction(8, 10) / (Fraction(8, 11) + Fraction(8, 10))
        f_b = 2 * Fraction(7, 9) * Fraction(7, 10) / (Fraction(7, 9) + Fraction(7, 10))
        assert r.accuracy == pytest.approx(0.75, abs=1e-12)
        assert r.precision == pytest.approx(float(p), abs=1e-12)
        assert r.recall == pytest.approx(float(rec), abs=1e-12)
        assert r.f_measure == pytest.approx(float((f_a + f_b) / 2), abs=1e-12)
        assert round(r.precision, 6) == 0.752525
        assert round(r.f_measure, 6) == 0.749373

    def test_never_predicted_class(self):
        r = report_from([[5, 0], [5, 0]])
        assert r.per_class["b"][0] == 0.0
        assert r.per_class["b"][2] == 0.0
        assert r.precision == pytest.approx(0.25)

    def test_perfect(self):
        r = report_from([[3, 0, 0], [0, 4, 0], [0, 0, 1]], ("x", "y", "z"))
        assert (r.accuracy, r.precision, r.recall, r.f_measure) == (1.0, 1.0, 1.0, 1.0)

    def test_empty(self):
        with pytest.raises(ValueError):
            classification_report(confusion_matrix([], [], (0, 1)))

    @given(st.lists(st.tuples(st.sampled_from((1, 0, 2)), st.sampled_from((1, 0, 2))), min_size=1, max_size=60))
    def test_weighted_recall_is_accuracy(self, pairs):
        truth, pred = zip(*pairs)
        r = evaluate_predictions(truth, pred, (1, 0, 2))
        assert r.recall == pytest.approx(r.accuracy, abs=1e-12)
        assert 0 <= r.precision <= 1 and 0 <= r.f_measure <= 1


class TestRoc:
    def test_four_instances(self):
        pts = roc_points([0.9, 0.8, 0.7, 0.6], [True, False, True, False])
        assert pts == [(0, 0), (0, 0.5), (0.5, 0.5), (0.5, 1), (1, 1)]
        assert auc_score([0.9, 0.8, 0.7, 0.6], [True, False, True, False]) == pytest.approx(0.75, abs=1e-9)

    def test_perfect_separation(self):
        assert auc_score([3, 2, 1, 0], [1, 1, 0, 0]) == 1.0

    def test_inverted(self):
        assert auc_score([0, 1, 2, 3], [1, 1, 0, 0]) == 0.0

    def test_all_tied(self):
        pts = roc_points([0.5] * 4, [1, 0, 1, 0])
        assert pts == [(0, 0), (1, 1)]
        assert auc_score([0.5] * 4, [1, 0, 1, 0]) == 0.5

    def test_tie_block_is_diagonal(self):
        # the tied pair (one pos, one neg) crosses together
        pts = roc_points([0.9, 0.5, 0.5, 0.1], [1, 1, 0, 0])
        assert pts == [(0, 0), (0, 0.5), (0.5, 1), (1, 1)]

    @pytest.mark.parametrize("labels", [[1, 1, 1], [0, 0, 0]])
    def test_one_sided(self, labels):
        with pytest.raises(ValueError):
            roc_points([0.1, 0.2, 0.3], labels)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            roc_points([0.1, 0.2], [1, 0, 1])

    def test_matches_mann_whitney(self):
        rng = np.random.default_rng(0)
        for _ in range(500):
            n = int(rng.integers(2, 201))
            scores = rng.integers(0, rng.integers(2, 50), n) / 7  # coarse grid forces ties
            labels = rng.random(n) < rng.uniform(0.1, 0.9)
            if labels.all() or not labels.any():
                labels[0] = not labels[0]
            assert abs(auc_score(scores, labels) - mann_whitney_auc(scores, labels)) <= 1e-9

    @given(st.lists(st.tuples(st.floats(-1e6, 1e6), st.booleans()), min_size=2, max_size=40, unique_by=lambda t: t[0]))
    @settings(max_examples=200)
    def test_negated_scores_complement(self, pairs):
        scores = np.array([s for s, _ in pairs])
        labels = np.array([p for _, p in pairs])
        if labels.all() or not labels.any():
            return
        assert auc_score(scores, labels) + auc_score(-scores, labels) == pytest.approx(1.0, abs=1e-9)

    @given(st.lists(st.tuples(st.integers(0, 5), st.booleans()), min_size=2, max_size=40))
    def test_curve_monotone_within_unit_square(self, pairs):
        scores = [s for s, _ in pairs]
        labels = [p for _, p in pairs]
        if all(labels) or not any(labels):
            return
        pts = roc_points(scores, labels)
        assert pts[0] == (0, 0) and pts[-1] == (1, 1)
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            assert x0 <= x1 and y0 <= y1
        assert 0 <= auc_score(scores, labels) <= 1

    def test_one_vs_rest(self):
        scores = np.array([[0.8, 0.1, 0.1], [0.1, 0.8, 0.1], [0.1, 0.1, 0.8], [0.6, 0.3, 0.1]])
        curves = one_vs_rest_curves(scores, [1, 0, 2, 1], (1, 0, 2))
        assert list(curves) == [1, 0, 2]
        assert all(c.auc == 1.0 for c in curves.values())
        assert curves[2].positive_class == 2

    def test_points_file_roundtrip(self, tmp_path):
        curve = roc_curve([0.3, 0.1, 0.7, 0.2], [1, 0, 1, 0])
        write_roc_points(curve, tmp_path / "roc.tsv")
        assert read_roc_points(tmp_path / "roc.tsv") == curve.points


class TestFormatting:
    def setup_method(self):
        self.r = report_from([[8, 2], [3, 7]])

    def test_results_table(self):
        table = format_results_table(
            {
                ("random_forest", "embedding"): self.r,
                ("random_forest", "ngram"): self.r,
                ("logistic_regression", "embedding"): self.r,
                ("svm_smo", "ngram"): self.r,
            }
        )
        lines = table.splitlines()
        assert "Word2vec" in lines[0] and "N-gram" in lines[0]
        assert lines[0].index("Word2vec") < lines[0].index("N-gram")
        for col in METRIC_COLUMNS:
            assert lines[1].count(col) == 2
        rows = lines[3:]
        assert [r.split(" | ")[0].strip() for r in rows] == ["Random Forest", "Logistic Regression", "SMO"]
        assert "75.00%" in rows[0] and "0.753" in rows[0] and "0.749" in rows[0]
        assert rows[1].split(" | ")[2].split() == ["-"] * 4

    def test_report_text(self):
        text = format_report(self.r, title="demo")
        assert text.startswith("demo\n")
        assert "Accuracy   0.7500" in text
        assert "confusion" in text

    def test_key_values(self):
        kv = dict(line.split("=", 1) for line in format_key_values(self.r, "x.").splitlines())
        assert float(kv["x.accuracy"]) == self.r.accuracy
        assert kv["x.class.a.support"] == "10"
