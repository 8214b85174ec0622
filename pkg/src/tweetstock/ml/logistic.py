"""Multinomial logistic regression trained by full-batch gradient descent."""

from __future__ import annotations

import numpy as np

from ..errors import NumericalError
from .base import LOGISTIC_REGRESSION, SentimentModel
from .dataset import Dataset


def log_softmax(Z):
    Z = Z - Z.max(axis=1, keepdims=True)
    return Z - np.log(np.exp(Z).sum(axis=1, keepdims=True))


def softmax(Z):
    return np.exp(log_softmax(Z))


def softmax_loss_and_grad(W, b, X, Y, l2):
    """Mean cross-entropy plus ``l2/2 * ||W||^2`` (bias unpenalized).

    ``Y`` is the one-hot target matrix. Returns ``(loss, dW, db)``.
    """
    n = X.shape[0]
    logp = log_softmax(X @ W + b)
    loss = -np.sum(Y * logp) / n + 0.5 * l2 * np.sum(W * W)
    G = (np.exp(logp) - Y) / n
    dW = np.asarray(X.T @ G) + l2 * W
    db = G.sum(axis=0)
    return loss, dW, db


class LogisticModel(SentimentModel):
    algorithm = LOGISTIC_REGRESSION

    def __init__(self, classes, kind, n_features, weights, bias, seed=None, loss_history=()):
        super().__init__(classes, kind, n_features, seed)
        self.weights = np.asarray(weights, dtype=float)
        self.bias = np.asarray(bias, dtype=float)
        self.loss_history = list(loss_history)

    def _scores(self, X):
        return softmax(np.asarray(X @ self.weights) + self.bias)


def train_logistic_regression(
    train: Dataset, l2: float = 1e-8, learning_rate: float = 0.01, epochs: int = 500, seed: int | None = None
) -> LogisticModel:
    """Zero-initialized softmax regression, ``epochs`` full-batch steps.

    ``loss_history[e]`` is the objective before step ``e``; the final entry is
    the objective after the last step. Raises :class:`NumericalError` as
    soon as the objective stops being finite.
    """
    if len(train) == 0:
        raise ValueError("cannot train on an empty dataset")
    if l2 < 0 or learning_rate <= 0 or epochs < 0:
        raise ValueError("need l2 >= 0, learning_rate > 0 and epochs >= 0")
    K, d = len(train.classes), train.n_features
    X = train.X
    Y = np.eye(K)[train.class_indices()]
    W = np.zeros((d, K))
    b = np.zeros(K)
    history = []
    for epoch in range(epochs + 1):
        # overflow shows up as a non-finite loss, reported below
        with np.errstate(over="ignore", invalid="ignore"):
            loss, dW, db = softmax_loss_and_grad(W, b, X, Y, l2)
        if not np.isfinite(loss):
            raise NumericalError(f"non-finite loss at epoch {epoch}", epoch=epoch)
        history.append(float(loss))
        if epoch == epochs:
            break
        with np.errstate(over="ignore", invalid="ignore"):
            W -= learning_rate * dW
            b -= learning_rate * db
    return LogisticModel(train.classes, train.kind, d, W, b, seed, history)
