"""Reading tweet corpora and daily price series from delimited text files.

Both readers use one fixed dialect: comma delimiter, double-quote quoting,
UTF-8, LF or CRLF line endings. Tweet files carry the header
``id,timestamp,text`` (an optional ``label`` column holds human sentiment
annotations); price files carry ``date,open,close`` and optionally a
``filled`` column written by :func:`write_stock_series`.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import CorpusError, DataError, FormatError, SeriesError

TWEET_COLUMNS = ("id", "timestamp", "text")
PRICE_COLUMNS = ("date", "open", "close")
SENTIMENT_LABELS = (0, 1, 2)


@dataclass(frozen=True)
class Tweet:
    id: str
    timestamp: dt.datetime
    text: str
    label: int | None = None

    @property
    def date(self) -> dt.date:
        return self.timestamp.date()


@dataclass(frozen=True)
class StockDay:
    date: dt.date
    open: float
    close: float
    filled: bool = False

    def price(self, field: str) -> float:
        if field not in ("open", "close"):
            raise ValueError(f"unknown price field {field!r}")
        return getattr(self, field)


@dataclass(frozen=True)
class StockSeries:
    """Date-ordered daily prices; ``days`` is a tuple so the series is hashable."""

    days: tuple[StockDay, ...]

    def __post_init__(self):
        for prev, cur in zip(self.days, self.days[1:]):
            if cur.date <= prev.date:
                raise SeriesError(f"dates not strictly increasing at {cur.date}")

    def __len__(self):
        return len(self.days)

    def __iter__(self):
        return iter(self.days)

    def __getitem__(self, i):
        return self.days[i]

    @property
    def dates(self) -> list[dt.date]:
        return [d.date for d in self.days]

    def is_contiguous(self) -> bool:
        return all((b.date - a.date).days == 1 for a, b in zip(self.days, self.days[1:]))


def parse_timestamp(value: str) -> dt.datetime:
    """Parse an ISO-8601 timestamp and normalize it to UTC.

    Naive timestamps are taken to be UTC already. A trailing ``Z`` is accepted.
    """
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    stamp = dt.datetime.fromisoformat(text)
    if stamp.tzinfo is None:
        return stamp.replace(tzinfo=dt.timezone.utc)
    return stamp.astimezone(dt.timezone.utc)


def _open_text(path):
    # newline="" lets the csv module handle quoted newlines and CRLF itself
    return open(path, "r", encoding="utf-8", newline="")


def header_index(header: Sequence[str], required: Iterable[str], path) -> dict[str, int]:
    names = [h.strip() for h in header]
    index = {name: i for i, name in enumerate(names)}
    for col in required:
        if col not in index:
            raise FormatError(f"missing column {col!r}", line=1, path=path)
    return index


def parse_label(raw: str, line: int, path) -> int | None:
    raw = raw.strip()
    if raw == "":
        return None
    try:
        label = int(raw)
    except ValueError:
        raise FormatError(f"sentiment label {raw!r} is not an integer", line=line, path=path) from None
    if label not in SENTIMENT_LABELS:
        raise FormatError(f"sentiment label {label} not in {SENTIMENT_LABELS}", line=line, path=path)
    return label


def read_tweet_corpus(path, delimiter: str = ",") -> list[Tweet]:
    """Read a tweet file into a list of :class:`Tweet`, preserving row order.

    Raises :class:`FormatError` for a missing column or a bad timestamp (with
    the offending line number) and :class:`CorpusError` for duplicate ids.
    """
    with _open_text(path) as fh:
        reader = csv.reader(fh, delimiter=delimiter, quotechar='"')
        header = next(reader, None)
        if header is None:
            raise FormatError("empty file, expected a header", line=1, path=path)
        col = header_index(header, TWEET_COLUMNS, path)
        label_col = col.get("label")
        tweets: list[Tweet] = []
        seen: set[str] = set()
        for row in reader:
            line = reader.line_num
            if not row:
                continue
            if len(row) < len(header):
                raise FormatError(f"expected {len(header)} fields, got {len(row)}", line=line, path=path)
            tweet_id = row[col["id"]]
            if not tweet_id:
                raise FormatError("empty tweet id", line=line, path=path)
            if tweet_id in seen:
                raise CorpusError(f"{path}: line {line}: duplicate tweet id {tweet_id!r}")
            seen.add(tweet_id)
            try:
                stamp = parse_timestamp(row[col["timestamp"]])
            except ValueError:
                raise FormatError(
                    f"unparseable timestamp {row[col['timestamp']]!r}", line=line, path=path
                ) from None
            label = parse_label(row[label_col], line, path) if label_col is not None else None
            tweets.append(Tweet(tweet_id, stamp, row[col["text"]], label))
    return tweets


def format_timestamp(stamp: dt.datetime) -> str:
    return stamp.astimezone(dt.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def write_tweet_corpus(tweets: Sequence[Tweet], path) -> None:
    with_labels = any(t.label is not None for t in tweets)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TWEET_COLUMNS + (("label",) if with_labels else ()))
        for t in tweets:
            row = [t.id, format_timestamp(t.timestamp), t.text]
            if with_labels:
                row.append("" if t.label is None else str(t.label))
            writer.writerow(row)


def _parse_price(raw: str, name: str, line: int, path) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise FormatError(f"{name} price {raw!r} is not a decimal number", line=line, path=path) from None
    if not value >= 0:  # also rejects NaN
        raise DataError(f"{path}: line {line}: {name} price must be >= 0, got {raw}")
    return value


def read_stock_series(path) -> StockSeries:
    """Read a price file; rows may come in any order and are sorted by date."""
    with _open_text(path) as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise FormatError("empty file, expected a header", line=1, path=path)
        col = header_index(header, PRICE_COLUMNS, path)
        filled_col = col.get("filled")
        days = []
        for row in reader:
            line = reader.line_num
            if not row:
                continue
            try:
                date = dt.date.fromisoformat(row[col["date"]].strip())
            except (ValueError, IndexError):
                raise FormatError(f"bad date in row {row!r}", line=line, path=path) from None
            open_ = _parse_price(row[col["open"]], "open", line, path)
            close = _parse_price(row[col["close"]], "close", line, path)
            filled = False
            if filled_col is not None:
                flag = row[filled_col].strip()
                if flag not in ("0", "1"):
                    raise FormatError(f"filled flag must be 0 or 1, got {flag!r}", line=line, path=path)
                filled = flag == "1"
            days.append(StockDay(date, open_, close, filled))
    days.sort(key=lambda d: d.date)
    for prev, cur in zip(days, days[1:]):
        if prev.date == cur.date:
            raise SeriesError(f"{path}: duplicate date {cur.date}")
    return StockSeries(tuple(days))


def write_stock_series(series: StockSeries, path=None) -> str:
    """Serialize ``series`` with a ``filled`` column; ``repr`` keeps floats exact.

    Returns the text and also writes it to ``path`` when one is given.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(PRICE_COLUMNS + ("filled",))
    for d in series:
        writer.writerow([d.date.isoformat(), repr(d.open), repr(d.close), "1" if d.filled else "0"])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def _midpoints(x: float, y: float, count: int) -> list[float]:
    # m1 = (x+y)/2, then each next value halves the remaining distance to y
    values = []
    prev = x
    for _ in range(count):
        prev = (prev + y) / 2
        values.append(prev)
    return values


def fill_gaps(series: StockSeries) -> StockSeries:
    """Insert every missing calendar day, filling prices by recursive midpoints.

    Between a known value ``x`` and the next known value ``y`` the missing
    days get ``(x+y)/2``, then ``(m1+y)/2`` and so on, left to right, for open
    and close independently. Inserted days are flagged ``filled=True``.
    """
    if len(series) == 0:
        raise ValueError("cannot fill gaps of an empty series")
    out = [series[0]]
    for prev, cur in zip(series.days, series.days[1:]):
        missing = (cur.date - prev.date).days - 1
        if missing > 0:
            opens = _midpoints(prev.open, cur.open, missing)
            closes = _midpoints(prev.close, cur.close, missing)
            for k in range(missing):
                date = prev.date + dt.timedelta(days=k + 1)
                out.append(StockDay(date, opens[k], closes[k], filled=True))
        out.append(cur)
    return StockSeries(tuple(out))

