"""Confusion matrices, weighted classification metrics, ROC curves and AUC."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class ConfusionMatrix:
    """``counts[i, j]`` = instances of true class ``classes[i]`` predicted as ``classes[j]``."""

    counts: np.ndarray
    classes: tuple

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def confusion_matrix(truth: Sequence, predicted: Sequence, classes: Sequence) -> ConfusionMatrix:
    truth, predicted = list(truth), list(predicted)
    if len(truth) != len(predicted):
        raise ValueError(f"{len(truth)} true labels but {len(predicted)} predictions")
    pos = {c: i for i, c in enumerate(classes)}
    counts = np.zeros((len(pos), len(pos)), dtype=np.int64)
    for t, p in zip(truth, predicted):
        t, p = _plain(t), _plain(p)
        if t not in pos or p not in pos:
            raise ValueError(f"label {t if t not in pos else p!r} not in classes {tuple(classes)}")
        counts[pos[t], pos[p]] += 1
    return ConfusionMatrix(counts, tuple(classes))


def _plain(v):
    return v.item() if isinstance(v, np.generic) else v


@dataclass(frozen=True)
class ClassificationReport:
    accuracy: float
    precision: float
    recall: float
    f_measure: float
    per_class: dict  # class -> (precision, recall, f_measure, support)
    confusion: ConfusionMatrix

    def as_dict(self) -> dict[str, float]:
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f_measure": self.f_measure,
        }


def _ratio(num, den):
    return num / den if den else 0.0


def classification_report(cm: ConfusionMatrix) -> ClassificationReport:
    """Accuracy plus support-weighted precision, recall and F-measure.

    Any 0/0 in a per-class metric counts as 0.
    """
    counts = cm.counts
    total = counts.sum()
    if total == 0:
        raise ValueError("confusion matrix is empty")
    per_class = {}
    precision = recall = f_measure = 0.0
    for i, c in enumerate(cm.classes):
        tp = counts[i, i]
        support = counts[i].sum()
        p = _ratio(tp, counts[:, i].sum())
        r = _ratio(tp, support)
        f = _ratio(2 * p * r, p + r)
        per_class[c] = (float(p), float(r), float(f), int(support))
        weight = support / total
        precision += weight * p
        recall += weight * r
        f_measure += weight * f
    accuracy = np.trace(counts) / total
    return ClassificationReport(float(accuracy), float(precision), float(recall), float(f_measure), per_class, cm)


def evaluate_predictions(truth, predicted, classes) -> ClassificationReport:
    return classification_report(confusion_matrix(truth, predicted, classes))


def _check_roc_inputs(scores, is_positive):
    scores = np.asarray(scores, dtype=float)
    pos = np.asarray(is_positive, dtype=bool)
    if scores.shape != pos.shape or scores.ndim != 1:
        raise ValueError("scores and labels must be 1-D and of equal length")
    if not pos.any() or pos.all():
        raise ValueError("ROC needs at least one positive and one negative instance")
    return scores, pos


def roc_points(scores, is_positive) -> list[tuple[float, float]]:
    """``(fpr, tpr)`` after each distinct score, highest first.

    Tied scores cross the threshold together. The list starts at ``(0, 0)``
    and ends at ``(1, 1)``.
    """
    scores, pos = _check_roc_inputs(scores, is_positive)
    order = np.argsort(-scores, kind="stable")
    s, p = scores[order], pos[order]
    tp = np.cumsum(p)
    fp = np.cumsum(~p)
    # last index of each tied block
    ends = np.flatnonzero(np.r_[s[1:] != s[:-1], True])
    n_pos, n_neg = tp[-1], fp[-1]
    points = [(0.0, 0.0)]
    points.extend((float(fp[e] / n_neg), float(tp[e] / n_pos)) for e in ends)
    if points[-1] != (1.0, 1.0):
        points.append((1.0, 1.0))
    return points


def trapezoid_area(points) -> float:
    area = 0.0
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        area += (x1 - x0) * (y0 + y1) / 2
    return area


def auc_score(scores, is_positive) -> float:
    return trapezoid_area(roc_points(scores, is_positive))


@dataclass(frozen=True)
class RocCurve:
    points: list
    auc: float
    positive_class: object


def roc_curve(scores, is_positive, positive_class=None) -> RocCurve:
    points = roc_points(scores, is_positive)
    return RocCurve(points, trapezoid_area(points), positive_class)


def one_vs_rest_curves(score_matrix, truth, classes) -> dict:
    """One ROC curve per class from a ``(n, K)`` score matrix, columns in ``classes`` order."""
    score_matrix = np.asarray(score_matrix, dtype=float)
    truth = np.asarray([_plain(t) for t in truth], dtype=object)
    return {c: roc_curve(score_matrix[:, k], truth == c, c) for k, c in enumerate(classes)}


def write_roc_points(curve: RocCurve, path) -> None:
    """``fpr<TAB>tpr`` lines for external plotting."""
    Path(path).write_text("".join(f"{x!r}\t{y!r}\n" for x, y in curve.points), encoding="utf-8")


def read_roc_points(path) -> list[tuple[float, float]]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            x, y = line.split("\t")
            out.append((float(x), float(y)))
    return out


# -- report rendering ---------------------------------------------------------

METRIC_COLUMNS = ("Accuracy", "Precision", "Recall", "F-Measure")
REPRESENTATION_NAMES = {"embedding": "Word2vec", "word2vec": "Word2vec", "ngram": "N-gram"}
ALGORITHM_NAMES = {
    "random_forest": "Random Forest",
    "logistic_regression": "Logistic Regression",
    "svm_smo": "SMO",
}


def _metric_cells(r: ClassificationReport) -> list[str]:
    return [f"{100 * r.accuracy:.2f}%", f"{r.precision:.3f}", f"{r.recall:.3f}", f"{r.f_measure:.3f}"]


def format_results_table(results: dict) -> str:
    """Render ``{(algorithm, representation): report}`` as a results grid.

    Rows are algorithms; each representation gets a group of Accuracy,
    Precision, Recall and F-Measure columns. Missing cells print ``-``.
    """
    algos = list(dict.fromkeys(a for a, _ in results))
    reps = list(dict.fromkeys(r for _, r in results))
    name_w = max(len("Machine Learning Algorithm"), *(len(ALGORITHM_NAMES.get(a, a)) for a in algos))
    cell_w = max(len(c) for c in METRIC_COLUMNS) + 2
    group_w = cell_w * len(METRIC_COLUMNS)
    top = " " * name_w + " | " + " | ".join(REPRESENTATION_NAMES.get(r, r).center(group_w) for r in reps)
    head = "Machine Learning Algorithm".ljust(name_w) + " | " + " | ".join(
        "".join(c.ljust(cell_w) for c in METRIC_COLUMNS) for _ in reps
    )
    lines = [top.rstrip(), head.rstrip(), "-" * len(head.rstrip())]
    for a in algos:
        groups = []
        for r in reps:
            rep = results.get((a, r))
            cells = _metric_cells(rep) if rep is not None else ["-"] * len(METRIC_COLUMNS)
            groups.append("".join(c.ljust(cell_w) for c in cells))
        lines.append((ALGORITHM_NAMES.get(a, a).ljust(name_w) + " | " + " | ".join(groups)).rstrip())
    return "\n".join(lines) + "\n"


def format_report(report: ClassificationReport, title: str | None = None) -> str:
    """Aligned plain-text report: headline metrics, per-class table, confusion matrix."""
    lines = [] if title is None else [title]
    for name, value in zip(METRIC_COLUMNS, (report.accuracy, report.precision, report.recall, report.f_measure)):
        lines.append(f"{name:<10} {value:.4f}")
    lines.append("")
    lines.append(f"{'class':<8}{'precision':>10}{'recall':>10}{'f-measure':>11}{'support':>9}")
    for c, (p, r, f, s) in report.per_class.items():
        lines.append(f"{str(c):<8}{p:>10.4f}{r:>10.4f}{f:>11.4f}{s:>9d}")
    lines.append("")
    lines.append("confusion (rows = true, columns = predicted)")
    classes = report.confusion.classes
    lines.append(" " * 8 + "".join(f"{str(c):>8}" for c in classes))
    for c, row in zip(classes, report.confusion.counts):
        lines.append(f"{str(c):<8}" + "".join(f"{int(v):>8d}" for v in row))
    return "\n".join(lines) + "\n"


def format_key_values(report: ClassificationReport, prefix: str = "") -> str:
    """Machine-readable ``key=value`` lines; floats in ``repr`` form."""
    lines = [f"{prefix}{k}={v!r}" for k, v in report.as_dict().items()]
    for c, (p, r, f, s) in report.per_class.items():
        lines += [
            f"{prefix}class.{c}.precision={p!r}",
            f"{prefix}class.{c}.recall={r!r}",
            f"{prefix}class.{c}.f_measure={f!r}",
            f"{prefix}class.{c}.support={s}",
        ]
    return "\n".join(lines) + "\n"
