"""Linear SVMs trained with simplified SMO, combined one-vs-one."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
import scipy.sparse as sp

from ..errors import TrainingDataError
from .base import SVM_SMO, SentimentModel
from .dataset import Dataset

# alpha_j moves smaller than this count as "no change"
MIN_ALPHA_STEP = 1e-5


@dataclass
class BinarySVM:
    """One pairwise machine: ``positive`` is the +1 side of ``w.x + b``."""

    positive: object
    negative: object
    w: np.ndarray
    b: float
    alphas: np.ndarray | None = None
    y: np.ndarray | None = None
    sweeps: int = 0

    def decision(self, X):
        return np.asarray(X @ self.w).ravel() + self.b


def smo(K, y, c=1.0, tol=1e-3, max_passes=10, rng=None, max_sweeps=10_000):
    """Simplified SMO on a precomputed kernel matrix.

    Sweeps over every alpha violating the KKT conditions by more than
    ``tol``, pairing it with a random partner. Stops after ``max_passes``
    consecutive sweeps without a change, or after ``max_sweeps`` sweeps in
    total. Returns ``(alphas, b, sweeps)``.
    """
    rng = np.random.default_rng() if rng is None else rng
    n = y.shape[0]
    a = np.zeros(n)
    b = 0.0
    passes = sweeps = 0
    while passes < max_passes and sweeps < max_sweeps:
        changed = 0
        for i in range(n):
            Ei = (a * y) @ K[:, i] + b - y[i]
            if not ((y[i] * Ei < -tol and a[i] < c) or (y[i] * Ei > tol and a[i] > 0)):
                continue
            j = int(rng.integers(n - 1))
            if j >= i:
                j += 1
            Ej = (a * y) @ K[:, j] + b - y[j]
            ai_old, aj_old = a[i], a[j]
            if y[i] != y[j]:
                lo, hi = max(0.0, aj_old - ai_old), min(c, c + aj_old - ai_old)
            else:
                lo, hi = max(0.0, ai_old + aj_old - c), min(c, ai_old + aj_old)
            if lo == hi:
                continue
            eta = 2 * K[i, j] - K[i, i] - K[j, j]
            if eta >= 0:
                continue
            aj = min(hi, max(lo, aj_old - y[j] * (Ei - Ej) / eta))
            if abs(aj - aj_old) < MIN_ALPHA_STEP:
                continue
            # the clip only absorbs roundoff; in exact arithmetic ai is in [0, c]
            ai = min(c, max(0.0, ai_old + y[i] * y[j] * (aj_old - aj)))
            a[i], a[j] = ai, aj
            b1 = b - Ei - y[i] * (ai - ai_old) * K[i, i] - y[j] * (aj - aj_old) * K[i, j]
            b2 = b - Ej - y[i] * (ai - ai_old) * K[i, j] - y[j] * (aj - aj_old) * K[j, j]
            if 0 < ai < c:
                b = b1
            elif 0 < aj < c:
                b = b2
            else:
                b = (b1 + b2) / 2
            changed += 1
        sweeps += 1
        passes = passes + 1 if changed == 0 else 0
    return a, float(b), sweeps


class SvmModel(SentimentModel):
    algorithm = SVM_SMO

    def __init__(self, classes, kind, n_features, machines, seed=None):
        super().__init__(classes, kind, n_features, seed)
        self.machines = list(machines)

    def votes(self, X):
        pos = {c: i for i, c in enumerate(self.classes)}
        out = np.zeros((X.shape[0], len(self.classes)))
        for m in self.machines:
            d = m.decision(X)
            out[:, pos[m.positive]] += d > 0
            out[:, pos[m.negative]] += d <= 0
        return out

    def _scores(self, X):
        return self.votes(X) / max(1, len(self.machines))


def train_svm_smo(
    train: Dataset,
    c: float = 1.0,
    tolerance: float = 1e-3,
    max_passes: int = 10,
    seed: int = 0,
    max_sweeps: int = 10_000,
) -> SvmModel:
    """One linear SVM per unordered class pair, the earlier class as +1.

    Every class in ``train.classes`` must be present; otherwise some pair
    has nothing to separate and :class:`TrainingDataError` is raised.
    """
    if len(train) == 0:
        raise ValueError("cannot train on an empty dataset")
    if c <= 0:
        raise ValueError(f"c must be > 0, got {c}")
    codes = train.class_indices()
    present = set(codes.tolist())
    missing = [train.classes[k] for k in range(len(train.classes)) if k not in present]
    if missing or len(train.classes) < 2:
        raise TrainingDataError(f"classes {missing} absent from training data; every pair needs both sides")
    X = train.X
    machines = []
    pairs = list(combinations(range(len(train.classes)), 2))
    for (p, q), child in zip(pairs, np.random.SeedSequence(seed).spawn(len(pairs))):
        rows = np.flatnonzero((codes == p) | (codes == q))
        Xp = X[rows]
        y = np.where(codes[rows] == p, 1.0, -1.0)
        gram = Xp @ Xp.T
        gram = gram.toarray() if sp.issparse(gram) else np.asarray(gram)
        alphas, b, sweeps = smo(gram, y, c, tolerance, max_passes, np.random.default_rng(child), max_sweeps)
        w = np.asarray(Xp.T @ (alphas * y)).ravel()
        machines.append(BinarySVM(train.classes[p], train.classes[q], w, b, alphas, y, sweeps))
    return SvmModel(train.classes, train.kind, train.n_features, machines, seed)
