"""End-to-end sentiment experiment: split, featurize, train, evaluate."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import ml
from .errors import FormatError
from .evaluate import ClassificationReport, evaluate_predictions
from .features import (
    DEFAULT_NGRAM_MAX,
    EMBEDDING,
    NGRAM,
    EmbeddingTable,
    NgramVocabulary,
    build_ngram_vocabulary,
    embed_tweet,
    vectorize_ngrams,
)
from .ml.serialize import parse_label
from .preprocess import CleanTweet


def featurize(tweets, kind, vocab=None, table=None):
    if kind == NGRAM:
        return [vectorize_ngrams(t, vocab) for t in tweets]
    if kind == EMBEDDING:
        return [embed_tweet(t, table) for t in tweets]
    raise ValueError(f"unknown feature kind {kind!r}")


@dataclass
class SentimentRun:
    algorithm: str
    kind: str
    model: ml.SentimentModel
    report: ClassificationReport
    test_ids: list
    test_truth: np.ndarray
    test_scores: np.ndarray


@dataclass
class SentimentExperiment:
    runs: list[SentimentRun] = field(default_factory=list)
    vocabulary: NgramVocabulary | None = None
    train_ids: list = field(default_factory=list)
    test_ids: list = field(default_factory=list)

    def results(self) -> dict:
        return {(r.algorithm, r.kind): r.report for r in self.runs}


def run_sentiment_experiment(
    tweets: Sequence[CleanTweet],
    kinds: Sequence[str],
    algorithms: Sequence[str],
    train_fraction: float = 0.9,
    mode: str = "ordered",
    seed: int = 0,
    n_max: int = DEFAULT_NGRAM_MAX,
    table: EmbeddingTable | None = None,
    params: dict | None = None,
) -> SentimentExperiment:
    """Train every (algorithm, representation) pair on one shared split.

    Only human-labeled tweets take part. The n-gram vocabulary comes from
    the training part alone, so test tweets can carry unseen n-grams.
    ``params`` maps an algorithm tag to extra trainer keyword arguments.
    """
    params = params or {}
    labeled = [t for t in tweets if t.label is not None]
    train_idx, test_idx = ml.split_indices(len(labeled), train_fraction, mode, seed)
    train_tweets = [labeled[i] for i in train_idx]
    test_tweets = [labeled[i] for i in test_idx]
    exp = SentimentExperiment(train_ids=[t.id for t in train_tweets], test_ids=[t.id for t in test_tweets])
    for kind in kinds:
        vocab = None
        if kind == NGRAM:
            vocab = build_ngram_vocabulary(train_tweets, n_max)
            exp.vocabulary = vocab
        elif table is None:
            raise ValueError("embedding features need an embedding table")
        train = ml.Dataset.from_vectors(featurize(train_tweets, kind, vocab, table), ml.SENTIMENT_CLASSES)
        test = ml.Dataset.from_vectors(featurize(test_tweets, kind, vocab, table), ml.SENTIMENT_CLASSES)
        for algorithm in algorithms:
            model = ml.train(algorithm, train, seed=seed, **params.get(algorithm, {}))
            scores = model.predict_scores(test.X)
            predicted = np.asarray(model.classes)[np.argmax(scores, axis=1)]
            report = evaluate_predictions(test.y, predicted, ml.SENTIMENT_CLASSES)
            exp.runs.append(SentimentRun(algorithm, kind, model, report, list(test.ids), test.y, scores))
    return exp


def write_predictions(path, ids, classes, scores, truth=None) -> None:
    """``id,truth,predicted,score_<class>...`` rows; truth may be blank."""
    scores = np.asarray(scores, dtype=float)
    predicted = np.asarray(classes)[np.argmax(scores, axis=1)] if len(scores) else []
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "truth", "predicted"] + [f"score_{c}" for c in classes])
        for i, ident in enumerate(ids):
            t = "" if truth is None or truth[i] is None else str(truth[i])
            writer.writerow([str(ident), t, str(predicted[i])] + [repr(float(s)) for s in scores[i]])


def read_predictions(path):
    """Inverse of :func:`write_predictions`: ``(ids, classes, scores, truth, predicted)``."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[:3] != ["id", "truth", "predicted"] or len(header) < 4:
            raise FormatError("expected header id,truth,predicted,score_<class>...", line=1, path=path)
        if not all(h.startswith("score_") for h in header[3:]):
            raise FormatError("score columns must be named score_<class>", line=1, path=path)
        classes = tuple(parse_label(h[len("score_"):]) for h in header[3:])
        ids, truth, predicted, scores = [], [], [], []
        for row in reader:
            if not row:
                continue
            if len(row) != len(header):
                raise FormatError(f"expected {len(header)} fields", line=reader.line_num, path=path)
            try:
                scores.append([float(v) for v in row[3:]])
            except ValueError:
                raise FormatError("non-numeric score", line=reader.line_num, path=path) from None
            ids.append(row[0])
            truth.append(parse_label(row[1]) if row[1] else None)
            predicted.append(parse_label(row[2]))
    return ids, classes, np.array(scores).reshape(-1, len(classes)), truth, predicted
