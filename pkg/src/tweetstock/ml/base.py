from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from ..features import NGRAM, FeatureVector
from .dataset import Dataset

RANDOM_FOREST = "random_forest"
LOGISTIC_REGRESSION = "logistic_regression"
SVM_SMO = "svm_smo"
ALGORITHMS = (RANDOM_FOREST, LOGISTIC_REGRESSION, SVM_SMO)


class SentimentModel:
    """Common surface of the three trained classifiers.

    Subclasses implement :meth:`_scores`, which maps a validated feature
    matrix to one row of class scores per instance, columns in ``classes``
    order.
    """

    algorithm: str = ""

    def __init__(self, classes, kind, n_features, seed=None):
        self.classes = tuple(classes)
        self.kind = kind
        self.n_features = int(n_features)
        self.seed = seed

    def _check(self, X):
        if X.ndim != 2 or X.shape[1] != self.n_features:
            raise ValueError(f"expected {self.n_features} features, got shape {X.shape}")
        if (self.kind == NGRAM) != sp.issparse(X):
            raise ValueError(f"model expects {self.kind} features")
        return X

    def predict_scores(self, X) -> np.ndarray:
        return self._scores(self._check(X))

    def predict(self, X) -> np.ndarray:
        scores = self.predict_scores(X)
        # argmax returns the first maximum, i.e. the earliest class on ties
        return np.asarray(self.classes)[np.argmax(scores, axis=1)]

    def _scores(self, X) -> np.ndarray:
        raise NotImplementedError


def as_matrix(model: SentimentModel, x):
    """Turn a FeatureVector, Dataset or matrix into a 2-D matrix for ``model``."""
    if isinstance(x, Dataset):
        return x.X
    if isinstance(x, FeatureVector):
        if x.kind != model.kind or x.dim != model.n_features:
            raise ValueError(
                f"{x.kind} vector of dimension {x.dim} does not fit a "
                f"{model.kind} model with {model.n_features} features"
            )
        if x.kind == NGRAM:
            cols = np.asarray(x.indices, dtype=np.int64)
            return sp.csr_matrix((np.ones(cols.size), cols, [0, cols.size]), shape=(1, x.dim))
        return np.asarray(x.values, dtype=float).reshape(1, -1)
    if sp.issparse(x):
        return sp.csr_matrix(x)
    arr = np.asarray(x, dtype=float)
    return arr.reshape(1, -1) if arr.ndim == 1 else arr


def predict_scores(model: SentimentModel, x) -> np.ndarray:
    """Per-class scores; a single vector in gives a 1-D result."""
    scores = model.predict_scores(as_matrix(model, x))
    single = isinstance(x, FeatureVector) or (not sp.issparse(x) and np.ndim(x) == 1)
    return scores[0] if single else scores


def predict_label(model: SentimentModel, x):
    labels = model.predict(as_matrix(model, x))
    single = isinstance(x, FeatureVector) or (not sp.issparse(x) and np.ndim(x) == 1)
    return labels[0].item() if single else labels


def argmax_label(scores, classes):
    """Label with the highest score; ties go to the earliest class."""
    return classes[int(np.argmax(np.asarray(scores)))]
