"""
Cleaning tweets
===============

Raw tweet text goes through normalization (links, handles, hashtags,
stretched letters), tokenization and stopword removal.
"""

import datetime as dt

from tweetstock.datasets import synthetic_tweets
from tweetstock.ingest import Tweet
from tweetstock.preprocess import normalize_text, preprocess, tokenize

# normalization alone: links and handles become placeholders, hashtags lose the '#'
for raw in ["#Microsoft", "@Billgates", "coooooooool!", "read http://nyti.ms/1U9a1oV"]:
    print(f"{raw!r:32} -> {normalize_text(raw)!r}")

# the full cleaning step on one tweet
stamp = dt.datetime(2015, 9, 1, 14, 30, tzinfo=dt.timezone.utc)
tweet = Tweet("t1", stamp, "Thanks @Microsoft , delivered my Surface Pro 3 power plug")
print(tokenize(normalize_text(tweet.text)))
print(preprocess(tweet).tokens)

# a seeded synthetic corpus, used by the other demos too
for t in synthetic_tweets(5, seed=0):
    print(t.label, f"{t.text!r:50}", preprocess(t).tokens)
