from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from ..features import EMBEDDING, NGRAM, FeatureVector

SENTIMENT_CLASSES = (1, 0, 2)  # positive, neutral, negative
MOVEMENT_CLASSES = (0, 1)


@dataclass
class Dataset:
    """Feature matrix plus labels.

    ``X`` is a CSR matrix for binary n-gram features and a dense 2-D array
    otherwise. ``y`` holds the original labels; ``classes`` fixes their order
    for scores, votes and tie-breaking.
    """

    X: np.ndarray | sp.csr_matrix
    y: np.ndarray
    classes: tuple
    kind: str = EMBEDDING
    ids: tuple | None = None

    def __post_init__(self):
        self.y = np.asarray(self.y)
        if self.X.shape[0] != self.y.shape[0]:
            raise ValueError(f"{self.X.shape[0]} rows but {self.y.shape[0]} labels")
        unknown = set(self.y.tolist()) - set(self.classes)
        if unknown:
            raise ValueError(f"labels {sorted(unknown)} not in classes {self.classes}")

    def __len__(self):
        return self.X.shape[0]

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.X)

    def class_indices(self) -> np.ndarray:
        """Labels re-coded as positions in ``classes``."""
        lookup = {c: i for i, c in enumerate(self.classes)}
        return np.array([lookup[v] for v in self.y.tolist()], dtype=np.intp)

    def subset(self, rows) -> "Dataset":
        rows = np.asarray(rows, dtype=np.intp)
        ids = None if self.ids is None else tuple(self.ids[i] for i in rows)
        return Dataset(self.X[rows], self.y[rows], self.classes, self.kind, ids)

    @classmethod
    def from_vectors(cls, vectors: Sequence[FeatureVector], classes=SENTIMENT_CLASSES) -> "Dataset":
        if not vectors:
            raise ValueError("no feature vectors")
        kind, dim = vectors[0].kind, vectors[0].dim
        for v in vectors:
            if v.kind != kind or v.dim != dim:
                raise ValueError("feature vectors differ in kind or dimension")
            if v.label is None:
                raise ValueError(f"feature vector {v.id!r} has no label")
        y = np.array([v.label for v in vectors])
        ids = tuple(v.id for v in vectors)
        return cls(vectors_to_matrix(vectors), y, tuple(classes), kind, ids)


def vectors_to_matrix(vectors: Sequence[FeatureVector]):
    kind, dim = vectors[0].kind, vectors[0].dim
    if kind == NGRAM:
        indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(v.indices) for v in vectors])
        indices = np.fromiter((j for v in vectors for j in v.indices), dtype=np.int64, count=indptr[-1])
        data = np.ones(indptr[-1])
        return sp.csr_matrix((data, indices, indptr), shape=(len(vectors), dim))
    return np.vstack([np.asarray(v.values, dtype=float) for v in vectors])


def split_indices(n: int, train_fraction: float, mode: str = "ordered", seed: int = 0):
    """Row indices for a train/test split; train gets ``floor(n * train_fraction)``."""
    if not 0 < train_fraction < 1:
        raise ValueError(f"train fraction must lie in (0, 1), got {train_fraction}")
    if mode not in ("ordered", "shuffled"):
        raise ValueError(f"unknown split mode {mode!r}")
    n_train = int(np.floor(n * train_fraction))
    if n < 2 or n_train == 0 or n_train == n:
        raise ValueError(f"split of {n} instances at {train_fraction} leaves an empty side")
    order = np.arange(n)
    if mode == "shuffled":
        order = np.random.default_rng(seed).permutation(n)
    return order[:n_train], order[n_train:]


def split_dataset(data: Dataset, train_fraction: float, mode: str = "ordered", seed: int = 0):
    train_idx, test_idx = split_indices(len(data), train_fraction, mode, seed)
    return data.subset(train_idx), data.subset(test_idx)
