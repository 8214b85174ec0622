"""Plain-text model files.

Layout: a ``tweetstock-model 1`` magic line, ``key value`` header lines
(algorithm, kind, n_features, classes, seed), then algorithm-specific
sections. Floats are written with ``repr`` so a load reproduces the saved
model bit for bit.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..errors import FormatError
from .base import LOGISTIC_REGRESSION, RANDOM_FOREST, SVM_SMO, SentimentModel
from .forest import DecisionTree, RandomForestModel
from .logistic import LogisticModel
from .svm import BinarySVM, SvmModel

MAGIC = "tweetstock-model 1"


def _floats(values) -> str:
    return " ".join(repr(float(v)) for v in np.ravel(values))


def _label(v) -> str:
    return str(v)


def parse_label(s: str):
    try:
        return int(s)
    except ValueError:
        return s


def dumps_model(model: SentimentModel) -> str:
    lines = [
        MAGIC,
        f"algorithm {model.algorithm}",
        f"kind {model.kind}",
        f"n_features {model.n_features}",
        "classes " + " ".join(_label(c) for c in model.classes),
        f"seed {'' if model.seed is None else model.seed}".rstrip(),
    ]
    if isinstance(model, RandomForestModel):
        lines.append(f"features_per_split {model.features_per_split}")
        lines.append(f"trees {len(model.trees)}")
        for tree in model.trees:
            lines.append(f"tree {tree.n_nodes}")
            for i in range(tree.n_nodes):
                counts = " ".join(str(int(c)) for c in tree.counts[i])
                lines.append(
                    f"{tree.feature[i]} {repr(float(tree.threshold[i]))} {tree.left[i]} {tree.right[i]} {counts}"
                )
    elif isinstance(model, LogisticModel):
        lines.append("bias " + _floats(model.bias))
        lines.append(f"weights {model.weights.shape[0]}")
        lines.extend(_floats(row) for row in model.weights)
    elif isinstance(model, SvmModel):
        lines.append(f"machines {len(model.machines)}")
        for m in model.machines:
            lines.append(f"machine {_label(m.positive)} {_label(m.negative)} {repr(float(m.b))}")
            lines.append(_floats(m.w))
    else:
        raise TypeError(f"cannot serialize {type(model).__name__}")
    return "\n".join(lines) + "\n"


def save_model(model: SentimentModel, path) -> None:
    Path(path).write_text(dumps_model(model), encoding="utf-8")


class _Lines:
    def __init__(self, text, path):
        self.lines = text.splitlines()
        self.pos = 0
        self.path = path

    def next(self) -> str:
        if self.pos >= len(self.lines):
            raise FormatError("unexpected end of model file", line=self.pos + 1, path=self.path)
        self.pos += 1
        return self.lines[self.pos - 1]

    def keyed(self, key) -> str:
        line = self.next()
        head, _, rest = line.partition(" ")
        if head != key:
            raise FormatError(f"expected {key!r}, found {line[:40]!r}", line=self.pos, path=self.path)
        return rest

    def fail(self, message):
        return FormatError(message, line=self.pos, path=self.path)


def loads_model(text: str, path=None) -> SentimentModel:
    src = _Lines(text, path)
    if src.next() != MAGIC:
        raise src.fail("not a tweetstock model file")
    try:
        algorithm = src.keyed("algorithm")
        kind = src.keyed("kind")
        n_features = int(src.keyed("n_features"))
        classes = tuple(parse_label(c) for c in src.keyed("classes").split())
        seed_text = src.next().partition(" ")[2].strip()
        seed = int(seed_text) if seed_text else None
        K = len(classes)
        if algorithm == RANDOM_FOREST:
            fps = int(src.keyed("features_per_split"))
            trees = []
            for _ in range(int(src.keyed("trees"))):
                tree = DecisionTree(K)
                for _ in range(int(src.keyed("tree"))):
                    parts = src.next().split()
                    tree.feature.append(int(parts[0]))
                    tree.threshold.append(float(parts[1]))
                    tree.left.append(int(parts[2]))
                    tree.right.append(int(parts[3]))
                    tree.counts.append(np.array([int(c) for c in parts[4 : 4 + K]]))
                tree._freeze()
                trees.append(tree)
            return RandomForestModel(classes, kind, n_features, trees, fps, seed)
        if algorithm == LOGISTIC_REGRESSION:
            bias = np.array([float(v) for v in src.keyed("bias").split()])
            rows = int(src.keyed("weights"))
            weights = np.array([[float(v) for v in src.next().split()] for _ in range(rows)]).reshape(rows, K)
            return LogisticModel(classes, kind, n_features, weights, bias, seed)
        if algorithm == SVM_SMO:
            machines = []
            for _ in range(int(src.keyed("machines"))):
                pos, neg, b = src.keyed("machine").split()
                w = np.array([float(v) for v in src.next().split()])
                machines.append(BinarySVM(parse_label(pos), parse_label(neg), w, float(b)))
            return SvmModel(classes, kind, n_features, machines, seed)
    except (ValueError, IndexError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise src.fail(f"malformed model file ({exc})") from None
    raise FormatError(f"unknown algorithm {algorithm!r}", path=path)


def load_model(path) -> SentimentModel:
    return loads_model(Path(path).read_text(encoding="utf-8"), path)
