"""Next-day movement prediction from windowed tweet sentiment counts."""

from __future__ import annotations

import csv
import datetime as dt
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import ml
from .errors import FormatError
from .evaluate import ClassificationReport, evaluate_predictions
from .ingest import StockSeries, header_index

POSITIVE, NEUTRAL, NEGATIVE = 1, 0, 2
DEFAULT_WINDOW = 3


@dataclass(frozen=True)
class DayLabel:
    date: dt.date
    movement: int


@dataclass(frozen=True)
class WindowInstance:
    target_date: dt.date
    pos: int
    neg: int
    neu: int
    movement: int

    @property
    def total(self) -> int:
        return self.pos + self.neg + self.neu

    def features(self) -> list[float]:
        return [float(self.pos), float(self.neg), float(self.neu)]


def label_trading_days(series: StockSeries, price_field: str = "close") -> list[DayLabel]:
    """Movement 0 when the previous day's price is higher, otherwise 1.

    The first day has no predecessor and gets no label.
    """
    if len(series) < 2:
        raise ValueError("need at least two days to label movements")
    labels = []
    for prev, cur in zip(series.days, series.days[1:]):
        down = prev.price(price_field) > cur.price(price_field)
        labels.append(DayLabel(cur.date, 0 if down else 1))
    return labels


def build_window_instances(
    labeled_tweets: Iterable[tuple[dt.date, int]],
    day_labels: Sequence[DayLabel],
    window_size: int = DEFAULT_WINDOW,
    drop_empty: bool = False,
) -> list[WindowInstance]:
    """Count positive, negative and neutral tweets over the days before each labeled day.

    The window for target day ``d`` is ``[d - window_size, d - 1]``. A day is
    used only when the whole window lies inside the tweet corpus's date
    range; windows without tweets inside that range count as zeros unless
    ``drop_empty`` is set.
    """
    if window_size < 1:
        raise ValueError(f"window size must be >= 1, got {window_size}")
    per_day: dict[dt.date, Counter] = {}
    for date, sentiment in labeled_tweets:
        if sentiment not in (POSITIVE, NEUTRAL, NEGATIVE):
            raise ValueError(f"sentiment {sentiment!r} not in (0, 1, 2)")
        per_day.setdefault(date, Counter())[sentiment] += 1
    if not per_day:
        return []
    first, last = min(per_day), max(per_day)
    out = []
    for label in sorted(day_labels, key=lambda d: d.date):
        start = label.date - dt.timedelta(days=window_size)
        end = label.date - dt.timedelta(days=1)
        if start < first or end > last:
            continue
        counts = Counter()
        for k in range(window_size):
            counts.update(per_day.get(start + dt.timedelta(days=k), Counter()))
        inst = WindowInstance(label.date, counts[POSITIVE], counts[NEGATIVE], counts[NEUTRAL], label.movement)
        if drop_empty and inst.total == 0:
            continue
        out.append(inst)
    return out


def instances_dataset(instances: Sequence[WindowInstance]) -> ml.Dataset:
    X = np.array([inst.features() for inst in instances], dtype=float).reshape(-1, 3)
    y = np.array([inst.movement for inst in instances])
    ids = tuple(inst.target_date.isoformat() for inst in instances)
    return ml.Dataset(X, y, ml.MOVEMENT_CLASSES, ids=ids)


@dataclass
class CorrelationResult:
    report: ClassificationReport
    model: ml.SentimentModel
    train_dates: list[dt.date]
    test_dates: list[dt.date]
    test_predictions: np.ndarray

    def manifest(self) -> str:
        """``date,part`` lines recording where every instance went."""
        rows = [f"{d.isoformat()},train" for d in self.train_dates]
        rows += [f"{d.isoformat()},test" for d in self.test_dates]
        return "date,part\n" + "\n".join(rows) + "\n"


def run_correlation_experiment(
    instances: Sequence[WindowInstance],
    algorithm: str = ml.LOGISTIC_REGRESSION,
    train_fraction: float = 0.8,
    mode: str = "ordered",
    seed: int = 0,
    **params,
) -> CorrelationResult:
    """Train a movement classifier on count features and score it on the held-out part.

    Instances are put in date order first, so ``ordered`` mode trains on the
    earliest dates and tests on the latest.
    """
    if algorithm not in (ml.LOGISTIC_REGRESSION, ml.SVM_SMO):
        raise ValueError(f"correlation model must be logistic regression or SMO, got {algorithm!r}")
    instances = sorted(instances, key=lambda i: i.target_date)
    if len(instances) < 4:
        raise ValueError(f"need at least 4 instances (2 per side of the split), got {len(instances)}")
    data = instances_dataset(instances)
    train_idx, test_idx = ml.split_indices(len(instances), train_fraction, mode, seed)
    if len(train_idx) < 2 or len(test_idx) < 2:
        raise ValueError("each side of the split needs at least 2 instances")
    train, test = data.subset(train_idx), data.subset(test_idx)
    model = ml.train(algorithm, train, seed=seed, **params)
    predicted = model.predict(test.X)
    report = evaluate_predictions(test.y, predicted, ml.MOVEMENT_CLASSES)
    return CorrelationResult(
        report,
        model,
        [instances[i].target_date for i in train_idx],
        [instances[i].target_date for i in test_idx],
        predicted,
    )


# -- file formats -------------------------------------------------------------


def write_day_labels(labels: Sequence[DayLabel], path) -> None:
    text = "date,movement\n" + "".join(f"{d.date.isoformat()},{d.movement}\n" for d in labels)
    Path(path).write_text(text, encoding="utf-8")


def read_day_labels(path) -> list[DayLabel]:
    out = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        col = header_index(next(reader, []), ("date", "movement"), path)
        for row in reader:
            if not row:
                continue
            try:
                movement = int(row[col["movement"]])
                if movement not in (0, 1):
                    raise ValueError
                out.append(DayLabel(dt.date.fromisoformat(row[col["date"]]), movement))
            except (ValueError, IndexError):
                raise FormatError(f"bad day label row {row!r}", line=reader.line_num, path=path) from None
    return out


INSTANCE_COLUMNS = ("date", "pos", "neg", "neu", "movement")


def write_instances(instances: Sequence[WindowInstance], path) -> None:
    lines = [",".join(INSTANCE_COLUMNS)]
    lines += [f"{i.target_date.isoformat()},{i.pos},{i.neg},{i.neu},{i.movement}" for i in instances]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_instances(path) -> list[WindowInstance]:
    out = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        col = header_index(next(reader, []), INSTANCE_COLUMNS, path)
        for row in reader:
            if not row:
                continue
            try:
                date = dt.date.fromisoformat(row[col["date"]])
                pos, neg, neu, movement = (int(row[col[k]]) for k in INSTANCE_COLUMNS[1:])
                if min(pos, neg, neu) < 0 or movement not in (0, 1):
                    raise ValueError
            except (ValueError, IndexError):
                raise FormatError(f"bad instance row {row!r}", line=reader.line_num, path=path) from None
            out.append(WindowInstance(date, pos, neg, neu, movement))
    return out
