"""Tweet cleaning: pattern normalization, tokenization, stopword removal.

Normalization runs on the raw text first because its rules (URLs, handles,
hashtags) are defined on unsplit text; tokenization and stopword removal
follow.
"""

from __future__ import annotations

import csv
import datetime as dt
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .errors import FormatError
from .ingest import Tweet, format_timestamp, header_index, parse_label, parse_timestamp

URL_TOKEN = "URL"
USER_TOKEN = "USER"

_URL_RE = re.compile(r"(?:https?://|www\.)\S*", re.IGNORECASE)
_HANDLE_RE = re.compile(r"@\w+")
_HASHTAG_RE = re.compile(r"#(\w+)")
# a letter ([^\W\d_]) repeated 3+ times; IGNORECASE makes "CoOol" count as one run
_ELONGATION_RE = re.compile(r"([^\W\d_])\1{2,}", re.IGNORECASE)
_EDGE_PUNCT_RE = re.compile(r"^[\W_]+|[\W_]+$")
_ALNUM_RE = re.compile(r"[^\W_]")
_MAX_PASSES = 16


@dataclass(frozen=True)
class CleanTweet:
    id: str
    tokens: tuple[str, ...]
    source_text: str = ""
    timestamp: dt.datetime | None = None
    label: int | None = None


@lru_cache(maxsize=None)
def default_stopwords() -> frozenset[str]:
    """The bundled 127-word English stopword list."""
    text = resources.files("tweetstock").joinpath("data/stopwords_en.txt").read_text(encoding="utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


def load_stopwords(path) -> frozenset[str]:
    """Read a stopword list stored one word per line (UTF-8)."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return frozenset(w.strip().lower() for w in lines if w.strip())


def normalize_text(text: str) -> str:
    """Apply the replacement rules in order, then lowercase.

    URLs become ``URL``, ``@handle`` becomes ``USER``, ``#tag`` keeps the
    word, letter runs of three or more shrink to two. The result is a fixed
    point: normalizing it again changes nothing.

    >>> normalize_text("coooooooool! #Microsoft @Billgates")
    'cool! microsoft user'
    """
    # A pass can expose a new match ("h#ttp://x" -> "http://x"), so repeat to
    # a fixed point. Ordinary text settles after one pass.
    for _ in range(_MAX_PASSES):
        out = _normalize_once(text)
        if out == text:
            break
        text = out
    return text


def _normalize_once(text: str) -> str:
    text = _URL_RE.sub(URL_TOKEN, text)
    text = _HANDLE_RE.sub(USER_TOKEN, text)
    text = _HASHTAG_RE.sub(r"\1", text)
    text = _ELONGATION_RE.sub(lambda m: m.group(0)[:2], text)
    return text.lower()


def tokenize(text: str) -> list[str]:
    """Split on whitespace, trim edge punctuation, drop tokens with no letter or digit."""
    tokens = []
    for raw in text.split():
        token = _EDGE_PUNCT_RE.sub("", raw)
        if token and _ALNUM_RE.search(token):
            tokens.append(token)
    return tokens


def remove_stopwords(tokens: Iterable[str], stopwords: frozenset[str] | None = None) -> list[str]:
    stop = default_stopwords() if stopwords is None else stopwords
    return [t for t in tokens if t not in stop]


def clean_tokens(text: str, stopwords: frozenset[str] | None = None) -> list[str]:
    return remove_stopwords(tokenize(normalize_text(text)), stopwords)


def preprocess(tweet: Tweet, stopwords: frozenset[str] | None = None) -> CleanTweet:
    tokens = clean_tokens(tweet.text, stopwords)
    return CleanTweet(tweet.id, tuple(tokens), tweet.text, tweet.timestamp, tweet.label)


def preprocess_corpus(tweets: Sequence[Tweet], stopwords: frozenset[str] | None = None) -> list[CleanTweet]:
    return [preprocess(t, stopwords) for t in tweets]


CLEAN_COLUMNS = ("id", "timestamp", "tokens", "label")


def write_clean_tweets(tweets: Sequence[CleanTweet], path) -> None:
    """Write ``id,timestamp,tokens,label`` rows; tokens are space-joined."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CLEAN_COLUMNS)
        for t in tweets:
            stamp = "" if t.timestamp is None else format_timestamp(t.timestamp)
            label = "" if t.label is None else str(t.label)
            writer.writerow([t.id, stamp, " ".join(t.tokens), label])


def read_clean_tweets(path) -> list[CleanTweet]:
    out = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise FormatError("empty file, expected a header", line=1, path=path)
        col = header_index(header, ("id", "tokens"), path)
        for row in reader:
            if not row:
                continue
            line = reader.line_num
            stamp = None
            if "timestamp" in col and row[col["timestamp"]].strip():
                try:
                    stamp = parse_timestamp(row[col["timestamp"]])
                except ValueError:
                    raise FormatError(
                        f"unparseable timestamp {row[col['timestamp']]!r}", line=line, path=path
                    ) from None
            label = parse_label(row[col["label"]], line, path) if "label" in col else None
            out.append(CleanTweet(row[col["id"]], tuple(row[col["tokens"]].split()), "", stamp, label))
    return out
