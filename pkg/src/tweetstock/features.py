"""Two tweet representations: binary n-gram presence and summed word vectors."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import FormatError
from .preprocess import CleanTweet

NGRAM = "ngram"
EMBEDDING = "embedding"
DEFAULT_NGRAM_MAX = 3
DEFAULT_EMBEDDING_DIM = 300


@dataclass(frozen=True, eq=False)
class FeatureVector:
    """One instance in either representation.

    ``indices`` holds the sorted set columns of a binary n-gram vector;
    ``values`` holds the dense summed embedding. Exactly one is populated,
    according to ``kind``.
    """

    kind: str
    dim: int
    indices: tuple[int, ...] = ()
    values: np.ndarray | None = None
    label: int | None = None
    id: str | None = None

    def to_dense(self) -> np.ndarray:
        if self.kind == EMBEDDING:
            return np.asarray(self.values, dtype=float)
        out = np.zeros(self.dim)
        out[list(self.indices)] = 1.0
        return out

    def __eq__(self, other):
        if not isinstance(other, FeatureVector):
            return NotImplemented
        same_values = (self.values is None and other.values is None) or (
            self.values is not None and other.values is not None and np.array_equal(self.values, other.values)
        )
        return (
            self.kind == other.kind
            and self.dim == other.dim
            and self.indices == other.indices
            and same_values
            and self.label == other.label
        )


def iter_ngrams(tokens: Sequence[str], n_max: int) -> Iterator[str]:
    """Yield every contiguous n-gram, shortest first at each start position."""
    for start in range(len(tokens)):
        for n in range(1, n_max + 1):
            if start + n > len(tokens):
                break
            yield " ".join(tokens[start : start + n])


@dataclass
class NgramVocabulary:
    """Ordered n-gram -> column mapping; index order equals insertion order."""

    n_max: int
    entries: dict[str, int] = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, gram):
        return gram in self.entries

    def __iter__(self):
        return iter(self.entries)

    def index(self, gram: str) -> int:
        return self.entries[gram]

    def add(self, gram: str) -> int:
        if gram not in self.entries:
            self.entries[gram] = len(self.entries)
        return self.entries[gram]

    def save(self, path) -> None:
        lines = [f"{i}\t{gram}\n" for gram, i in self.entries.items()]
        Path(path).write_text("".join(lines), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "NgramVocabulary":
        entries = {}
        n_max = 1
        text = Path(path).read_text(encoding="utf-8")
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line:
                continue
            try:
                idx, gram = line.split("\t", 1)
                idx = int(idx)
            except ValueError:
                raise FormatError("expected index<TAB>ngram", line=lineno, path=path) from None
            if idx != len(entries) or gram in entries:
                raise FormatError(f"index {idx} out of sequence or n-gram repeated", line=lineno, path=path)
            entries[gram] = idx
            n_max = max(n_max, len(gram.split(" ")))
        return cls(n_max, entries)


def build_ngram_vocabulary(corpus: Iterable[CleanTweet], n_max: int = DEFAULT_NGRAM_MAX) -> NgramVocabulary:
    """Collect every n-gram of length 1..n_max in first-appearance order."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    vocab = NgramVocabulary(n_max)
    for tweet in corpus:
        for gram in iter_ngrams(tweet.tokens, n_max):
            vocab.add(gram)
    return vocab


def vectorize_ngrams(tweet: CleanTweet, vocab: NgramVocabulary) -> FeatureVector:
    present = {vocab.entries[g] for g in iter_ngrams(tweet.tokens, vocab.n_max) if g in vocab.entries}
    return FeatureVector(NGRAM, len(vocab), indices=tuple(sorted(present)), label=tweet.label, id=tweet.id)


@dataclass
class EmbeddingTable:
    dimension: int
    vectors: dict[str, np.ndarray]

    def __len__(self):
        return len(self.vectors)

    def __contains__(self, word):
        return word in self.vectors

    def __getitem__(self, word):
        return self.vectors[word]


def load_embeddings(path) -> EmbeddingTable:
    """Load word vectors from the plain text format.

    An optional ``<count> <dim>`` header may open the file; every other line is
    a word followed by its components. Rows disagreeing on length raise
    :class:`FormatError`.
    """
    vectors: dict[str, np.ndarray] = {}
    dim = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.rstrip("\r\n").split(" ")
            parts = [p for p in parts if p != ""]
            if not parts:
                continue
            if lineno == 1 and len(parts) == 2 and all(p.isdigit() for p in parts):
                dim = int(parts[1])
                continue
            word, raw = parts[0], parts[1:]
            if dim is None:
                dim = len(raw)
            if len(raw) != dim or dim == 0:
                raise FormatError(f"expected {dim} components for {word!r}, got {len(raw)}", line=lineno, path=path)
            try:
                vectors[word] = np.array([float(v) for v in raw])
            except ValueError:
                raise FormatError(f"non-numeric component in vector for {word!r}", line=lineno, path=path) from None
    return EmbeddingTable(DEFAULT_EMBEDDING_DIM if dim is None else dim, vectors)


def save_embeddings(table: EmbeddingTable, path, header: bool = True) -> None:
    """Write ``table`` in the text format read by :func:`load_embeddings`."""
    lines = [f"{len(table)} {table.dimension}"] if header else []
    lines += [word + "".join(f" {v!r}" for v in vec.tolist()) for word, vec in table.vectors.items()]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def embed_tweet(tweet: CleanTweet, table: EmbeddingTable) -> FeatureVector:
    """Sum the vectors of all in-table tokens; unknown tokens contribute nothing."""
    total = np.zeros(table.dimension)
    for token in tweet.tokens:
        vec = table.vectors.get(token)
        if vec is not None:
            total += vec
    return FeatureVector(EMBEDDING, table.dimension, values=total, label=tweet.label, id=tweet.id)


def write_feature_file(vectors: Sequence[FeatureVector], path, kind: str, dim: int) -> None:
    """Write ``id<TAB>label<TAB>payload`` rows under a ``#kind <kind> dim <dim>`` header.

    The payload is space-separated set indices for n-grams, or ``repr``
    floats for embeddings, so files round-trip exactly.
    """
    lines = [f"#kind {kind} dim {dim}\n"]
    for i, v in enumerate(vectors):
        ident = v.id if v.id is not None else str(i)
        label = "" if v.label is None else str(v.label)
        if kind == NGRAM:
            payload = " ".join(str(j) for j in v.indices)
        else:
            payload = " ".join(repr(float(x)) for x in v.values)
        lines.append(f"{ident}\t{label}\t{payload}\n")
    Path(path).write_text("".join(lines), encoding="utf-8")


def read_feature_file(path) -> tuple[str, int, list[FeatureVector]]:
    text = Path(path).read_text(encoding="utf-8").splitlines()
    if not text or not text[0].startswith("#kind "):
        raise FormatError("missing '#kind <kind> dim <dim>' header", line=1, path=path)
    head = text[0].split()
    try:
        kind, dim = head[1], int(head[3])
    except (IndexError, ValueError):
        raise FormatError("malformed header", line=1, path=path) from None
    if kind not in (NGRAM, EMBEDDING):
        raise FormatError(f"unknown feature kind {kind!r}", line=1, path=path)
    vectors = []
    for lineno, line in enumerate(text[1:], start=2):
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise FormatError("expected id<TAB>label<TAB>values", line=lineno, path=path)
        ident, label, payload = fields
        label = int(label) if label else None
        try:
            if kind == NGRAM:
                idx = tuple(int(j) for j in payload.split())
                if any(j < 0 or j >= dim for j in idx):
                    raise FormatError(f"index out of range for dim {dim}", line=lineno, path=path)
                vectors.append(FeatureVector(NGRAM, dim, indices=idx, label=label, id=ident))
            else:
                vals = np.array([float(x) for x in payload.split()])
                if vals.shape != (dim,):
                    raise FormatError(f"expected {dim} values, got {vals.size}", line=lineno, path=path)
                vectors.append(FeatureVector(EMBEDDING, dim, values=vals, label=label, id=ident))
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError("non-numeric value", line=lineno, path=path) from None
    return kind, dim, vectors
