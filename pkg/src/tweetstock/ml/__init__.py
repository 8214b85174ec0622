"""From-scratch classifiers: random forest, softmax regression, SMO-trained SVM."""

from .base import (
    ALGORITHMS,
    LOGISTIC_REGRESSION,
    RANDOM_FOREST,
    SVM_SMO,
    SentimentModel,
    predict_label,
    predict_scores,
)
from .dataset import MOVEMENT_CLASSES, SENTIMENT_CLASSES, Dataset, split_dataset, split_indices
from .forest import RandomForestModel, train_random_forest
from .logistic import LogisticModel, softmax_loss_and_grad, train_logistic_regression
from .serialize import load_model, save_model
from .svm import SvmModel, train_svm_smo


def train(algorithm, data, seed=0, **params):
    """Dispatch to a trainer by algorithm tag, forwarding hyperparameters."""
    if algorithm == RANDOM_FOREST:
        return train_random_forest(data, seed=seed, **params)
    if algorithm == LOGISTIC_REGRESSION:
        return train_logistic_regression(data, seed=seed, **params)
    if algorithm == SVM_SMO:
        return train_svm_smo(data, seed=seed, **params)
    raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")


__all__ = [
    "ALGORITHMS",
    "LOGISTIC_REGRESSION",
    "RANDOM_FOREST",
    "SVM_SMO",
    "MOVEMENT_CLASSES",
    "SENTIMENT_CLASSES",
    "Dataset",
    "LogisticModel",
    "RandomForestModel",
    "SentimentModel",
    "SvmModel",
    "load_model",
    "predict_label",
    "predict_scores",
    "save_model",
    "softmax_loss_and_grad",
    "split_dataset",
    "split_indices",
    "train",
    "train_logistic_regression",
    "train_random_forest",
    "train_svm_smo",
]
