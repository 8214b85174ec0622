"""Seeded synthetic data used by the tests and demos."""

from __future__ import annotations

import datetime as dt

import numpy as np

from .ml.dataset import SENTIMENT_CLASSES, Dataset


def gaussian_blobs(n=300, n_features=10, classes=SENTIMENT_CLASSES, spread=1.0, separation=4.0, seed=42) -> Dataset:
    """Isotropic Gaussian clusters, one per class, in equal shares (remainder to the first classes).

    Cluster centres are drawn from N(0, separation^2) per coordinate, so with
    the defaults the centres sit roughly 18 standard deviations apart.
    Instances are shuffled.
    """
    rng = np.random.default_rng(seed)
    k = len(classes)
    centres = rng.normal(0.0, separation, size=(k, n_features))
    sizes = [n // k + (1 if i < n % k else 0) for i in range(k)]
    codes = np.repeat(np.arange(k), sizes)
    X = centres[codes] + rng.normal(0.0, spread, size=(n, n_features))
    order = rng.permutation(n)
    y = np.asarray(classes)[codes[order]]
    return Dataset(X[order], y, tuple(classes))


def count_instances(n=200, seed=0, max_count=30, start=dt.date(2015, 9, 3)):
    """Window instances whose movement is 1 exactly when positives outnumber negatives.

    Returns a list of :class:`~tweetstock.correlate.WindowInstance` on
    consecutive dates. Ties between positive and negative counts are
    resampled away so the label rule has a margin.
    """
    from .correlate import WindowInstance

    rng = np.random.default_rng(seed)
    out = []
    day = start
    while len(out) < n:
        pos, neg, neu = (int(v) for v in rng.integers(0, max_count + 1, size=3))
        if pos == neg:
            continue
        out.append(WindowInstance(day, pos, neg, neu, int(pos > neg)))
        day += dt.timedelta(days=1)
    return out


# -- a small labeled tweet corpus with matching prices and word vectors ------

SENTIMENT_WORDS = {
    1: ("great", "love", "happy", "awesome", "excellent", "thanks", "brilliant"),
    0: ("announces", "update", "release", "meeting", "report", "available", "event"),
    2: ("bad", "hate", "broken", "awful", "crash", "angry", "terrible"),
}
TOPIC_WORDS = ("surface", "windows", "office", "xbox", "azure", "store", "laptop")
_DECORATIONS = ("@msft_support", "#Windows10", "http://t.co/abc{k}", "sooooo", "the", "is", "a")


def synthetic_tweets(n=120, seed=0, start=dt.date(2015, 9, 1), days=30):
    """Labeled tweets whose wording follows their sentiment class.

    Each text mixes two class words with topic words and the usual tweet
    debris (handles, hashtags, links, elongations, stopwords), so it
    exercises the whole cleaning path. About one tweet in ten has no label.
    Timestamps are spread uniformly over ``days`` days from ``start``.
    """
    from .ingest import Tweet

    rng = np.random.default_rng(seed)
    tweets = []
    for k in range(n):
        label = int(rng.choice(SENTIMENT_CLASSES))
        words = list(rng.choice(SENTIMENT_WORDS[label], size=2))
        words += list(rng.choice(TOPIC_WORDS, size=int(rng.integers(1, 3))))
        words += [d.format(k=k) for d in rng.choice(_DECORATIONS, size=int(rng.integers(0, 3)), replace=False)]
        words = [w.capitalize() if rng.random() < 0.2 else w for w in rng.permutation(words)]
        stamp = dt.datetime.combine(start, dt.time(), dt.timezone.utc) + dt.timedelta(
            days=int(rng.integers(days)), seconds=int(rng.integers(86_400))
        )
        tweets.append(Tweet(f"t{k:04d}", stamp, " ".join(words), None if rng.random() < 0.1 else label))
    return tweets


def synthetic_embeddings(dimension=8, seed=0, noise=0.3):
    """Word vectors where each sentiment class owns one direction.

    Class words point along their class axis plus Gaussian noise; topic
    words and the placeholders ``user`` and ``url`` are pure noise.
    """
    from .features import EmbeddingTable

    if dimension < len(SENTIMENT_WORDS):
        raise ValueError(f"need at least {len(SENTIMENT_WORDS)} dimensions")
    rng = np.random.default_rng(seed)
    vectors = {}
    for axis, label in enumerate(SENTIMENT_CLASSES):
        for word in SENTIMENT_WORDS[label]:
            v = rng.normal(0.0, noise, dimension)
            v[axis] += 1.0
            vectors[word] = v
    for word in TOPIC_WORDS + ("user", "url"):
        vectors[word] = rng.normal(0.0, noise, dimension)
    return EmbeddingTable(dimension, vectors)


def synthetic_prices(start=dt.date(2015, 9, 1), days=30, seed=0, price=40.0):
    """A random-walk price series on weekdays only, so weekends are gaps to fill."""
    from .ingest import StockDay, StockSeries

    rng = np.random.default_rng(seed)
    out = []
    for k in range(days):
        date = start + dt.timedelta(days=k)
        open_ = round(price, 2)
        price = max(1.0, price + float(rng.normal(0.0, 0.8)))
        if date.weekday() < 5:
            out.append(StockDay(date, open_, round(price, 2)))
    return StockSeries(tuple(out))
