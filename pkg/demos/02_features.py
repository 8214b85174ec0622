"""
N-gram and embedding features
=============================

Two views of a cleaned tweet: a binary bag of n-grams over a training
vocabulary, and the sum of its word vectors.
"""

import numpy as np

from tweetstock.datasets import synthetic_embeddings
from tweetstock.features import build_ngram_vocabulary, embed_tweet, vectorize_ngrams
from tweetstock.preprocess import CleanTweet

sentence = CleanTweet("s", ("microsoft", "is", "launching", "a", "new", "product"))
vocab = build_ngram_vocabulary([sentence], n_max=3)
print(len(vocab), "n-grams of length 1 to 3")
print([g for g in vocab if g.count(" ") == 2])

# tweets only switch on n-grams the vocabulary already knows
other = CleanTweet("o", ("a", "new", "product", "line"))
v = vectorize_ngrams(other, vocab)
print(sorted(g for g in vocab if vocab.index(g) in v.indices))

# embeddings: word order does not matter and unknown words add nothing
table = synthetic_embeddings(dimension=8, seed=0)
a = embed_tweet(CleanTweet("a", ("great", "surface", "zzz")), table).values
b = embed_tweet(CleanTweet("b", ("surface", "great")), table).values
print(np.allclose(a, b), np.round(a, 3))
