"""
Sentiment counts and next-day movement
======================================

Fill calendar gaps in a price series, label each day up or down, count
the sentiment of the tweets in the days before it, and check whether a
classifier can read the movement off those counts.
"""

import numpy as np

from tweetstock.correlate import (
    WindowInstance,
    build_window_instances,
    label_trading_days,
    run_correlation_experiment,
)
from tweetstock.datasets import count_instances, synthetic_prices, synthetic_tweets
from tweetstock.ingest import fill_gaps

# weekend gaps are filled by repeated midpoints
prices = synthetic_prices(days=14, seed=3)
filled = fill_gaps(prices)
print(len(prices), "trading days ->", len(filled), "calendar days")
for d in filled.days[:7]:
    print(d.date, d.close, "filled" if d.filled else "")

labels = label_trading_days(filled)
tweets = [(t.timestamp.date(), t.label) for t in synthetic_tweets(200, seed=3, days=14) if t.label is not None]
windows = build_window_instances(tweets, labels, window_size=3)
print(windows[0])

# counts that really drive the label are learned almost perfectly
instances = count_instances(200, seed=0)
result = run_correlation_experiment(instances)
print("signal accuracy", result.report.accuracy)

# with the labels shuffled the same pipeline sits near a coin flip
rng = np.random.default_rng(0)
null = []
for seed in range(20):
    moves = rng.permutation([i.movement for i in instances])
    shuffled = [WindowInstance(i.target_date, i.pos, i.neg, i.neu, int(m)) for i, m in zip(instances, moves)]
    null.append(run_correlation_experiment(shuffled).report.accuracy)
print("null accuracy", round(float(np.mean(null)), 3))
