"""Random forest of unpruned Gini trees grown on bootstrap samples."""

from __future__ import annotations

import math

import numpy as np
import scipy.sparse as sp

from .base import RANDOM_FOREST, SentimentModel
from .dataset import Dataset

# Gini scores within this distance of the best count as ties
TIE_EPS = 1e-9


def _block(X, rows, cols):
    """Dense ``X[rows][:, cols]`` for dense or CSR input."""
    if sp.issparse(X):
        return X[rows][:, cols].toarray()
    return X[np.ix_(rows, cols)]


def _take(X, rows, cols):
    """Elementwise ``X[rows[i], cols[i]]``."""
    if sp.issparse(X):
        return np.asarray(X[rows, cols]).ravel()
    return X[rows, cols]


def best_split(block, yk, n_classes):
    """Best Gini split over the columns of ``block``.

    Returns ``(column, threshold, score)`` or ``None`` when every column is
    constant. ``score`` is the size-weighted Gini impurity of the two
    children times the node size. Among near-equal scores the lowest column
    wins, then the lowest threshold. Thresholds are midpoints between
    adjacent distinct sorted values; rows with value <= threshold go left.
    """
    n, m = block.shape
    order = np.argsort(block, axis=0, kind="stable")
    xs = np.take_along_axis(block, order, axis=0)
    labels = yk[order]
    valid = xs[:-1] < xs[1:]
    if not valid.any():
        return None
    n_left = np.arange(1, n, dtype=float)[:, None]
    n_right = n - n_left
    sq_left = np.zeros((n - 1, m))
    sq_right = np.zeros((n - 1, m))
    for k in range(n_classes):
        cum = np.cumsum(labels == k, axis=0)
        left = cum[:-1]
        right = cum[-1] - left
        sq_left += left * left
        sq_right += right * right
    score = (n_left - sq_left / n_left) + (n_right - sq_right / n_right)
    score[~valid] = np.inf
    target = score.min() + TIE_EPS
    col = int(np.flatnonzero((score <= target).any(axis=0))[0])
    row = int(np.flatnonzero(score[:, col] <= target)[0])
    threshold = (xs[row, col] + xs[row + 1, col]) / 2
    return col, float(threshold), float(score[row, col])


class DecisionTree:
    """Flat-array binary tree. ``feature[i] < 0`` marks a leaf."""

    def __init__(self, n_classes):
        self.n_classes = n_classes
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.counts: list[np.ndarray] = []
        self.sample: np.ndarray | None = None

    def _new_node(self, counts):
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.counts.append(counts)
        return len(self.feature) - 1

    @property
    def n_nodes(self):
        return len(self.feature)

    def fit(self, X, yk, features_per_split, rng):
        n_features = X.shape[1]
        m = min(max(1, features_per_split), n_features)
        root = self._new_node(np.bincount(yk, minlength=self.n_classes))
        stack = [(root, np.arange(X.shape[0]))]
        while stack:
            node, rows = stack.pop()
            counts = self.counts[node]
            if rows.size < 2 or np.count_nonzero(counts) <= 1:
                continue
            split = self._choose(X, rows, yk[rows], m, n_features, rng)
            if split is None:
                continue
            feat, thr = split
            go_left = _block(X, rows, [feat])[:, 0] <= thr
            left_rows, right_rows = rows[go_left], rows[~go_left]
            self.feature[node] = feat
            self.threshold[node] = thr
            self.left[node] = self._new_node(np.bincount(yk[left_rows], minlength=self.n_classes))
            self.right[node] = self._new_node(np.bincount(yk[right_rows], minlength=self.n_classes))
            stack.append((self.right[node], right_rows))
            stack.append((self.left[node], left_rows))
        self._freeze()
        return self

    def _choose(self, X, rows, node_y, m, n_features, rng):
        # Draw m candidates; if all are constant on this node keep drawing
        # from the remaining features, m at a time, until one can split.
        if m == n_features:
            batches = [np.arange(n_features)]
        else:
            perm = rng.permutation(n_features)
            batches = [np.sort(perm[i : i + m]) for i in range(0, n_features, m)]
        for cand in batches:
            found = best_split(_block(X, rows, cand), node_y, self.n_classes)
            if found is not None:
                col, thr, _ = found
                return int(cand[col]), thr
        return None

    def _freeze(self):
        self.feature_ = np.asarray(self.feature, dtype=np.intp)
        self.threshold_ = np.asarray(self.threshold, dtype=float)
        self.left_ = np.asarray(self.left, dtype=np.intp)
        self.right_ = np.asarray(self.right, dtype=np.intp)
        self.leaf_class_ = np.array([int(np.argmax(c)) for c in self.counts], dtype=np.intp)

    def apply(self, X) -> np.ndarray:
        """Leaf node index reached by each row of ``X``."""
        node = np.zeros(X.shape[0], dtype=np.intp)
        active = np.arange(X.shape[0])
        while active.size:
            feat = self.feature_[node[active]]
            inner = feat >= 0
            active, feat = active[inner], feat[inner]
            if not active.size:
                break
            cur = node[active]
            go_left = _take(X, active, feat) <= self.threshold_[cur]
            node[active] = np.where(go_left, self.left_[cur], self.right_[cur])
        return node

    def predict_codes(self, X) -> np.ndarray:
        return self.leaf_class_[self.apply(X)]


class RandomForestModel(SentimentModel):
    algorithm = RANDOM_FOREST

    def __init__(self, classes, kind, n_features, trees, features_per_split, seed=None):
        super().__init__(classes, kind, n_features, seed)
        self.trees = list(trees)
        self.features_per_split = features_per_split

    def votes(self, X) -> np.ndarray:
        out = np.zeros((X.shape[0], len(self.classes)))
        rows = np.arange(X.shape[0])
        for tree in self.trees:
            out[rows, tree.predict_codes(X)] += 1
        return out

    def _scores(self, X):
        return self.votes(X) / len(self.trees)


def default_features_per_split(n_features: int) -> int:
    return max(1, int(math.floor(math.sqrt(n_features))))


def train_random_forest(
    train: Dataset, num_trees: int = 100, features_per_split: int | None = None, seed: int = 0
) -> RandomForestModel:
    """Grow ``num_trees`` unpruned Gini trees, each on its own bootstrap sample.

    Every tree draws from a child generator spawned off ``seed``, so the
    forest is bit-reproducible and tree ``t`` does not depend on how many
    trees come after it.
    """
    if len(train) == 0:
        raise ValueError("cannot train on an empty dataset")
    if num_trees < 1:
        raise ValueError(f"num_trees must be >= 1, got {num_trees}")
    if features_per_split is None:
        features_per_split = default_features_per_split(train.n_features)
    X = train.X.tocsr() if train.is_sparse else np.asarray(train.X, dtype=float)
    yk = train.class_indices()
    n = len(train)
    trees = []
    for child in np.random.SeedSequence(seed).spawn(num_trees):
        rng = np.random.default_rng(child)
        sample = rng.integers(0, n, size=n)
        tree = DecisionTree(len(train.classes)).fit(X[sample], yk[sample], features_per_split, rng)
        tree.sample = sample
        trees.append(tree)
    return RandomForestModel(train.classes, train.kind, train.n_features, trees, features_per_split, seed)
