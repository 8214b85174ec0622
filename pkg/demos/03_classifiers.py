"""
Three classifiers on well-separated blobs
=========================================

Random forest, softmax regression and a one-vs-one SMO SVM, all with their
default settings, on 300 points in 10 dimensions.
"""

import time

import numpy as np

from tweetstock import ml
from tweetstock.datasets import gaussian_blobs
from tweetstock.evaluate import evaluate_predictions, format_results_table

data = gaussian_blobs(300, 10, seed=42)
train, test = ml.split_dataset(data, 0.8, "shuffled", seed=42)
print(len(train), "train /", len(test), "test, classes", data.classes)

results = {}
for algo in ml.ALGORITHMS:
    start = time.perf_counter()
    model = ml.train(algo, train, seed=42)
    results[(algo, "embedding")] = evaluate_predictions(test.y, model.predict(test.X), data.classes)
    print(f"{algo:20} {time.perf_counter() - start:.2f} s")
print(format_results_table(results))

# scores are probabilities (logistic) or vote fractions (forest, SMO)
model = ml.train_random_forest(train, num_trees=20, seed=1)
print(np.round(model.predict_scores(test.X[:3]), 2))

# the softmax objective falls steadily under gradient descent
logistic = ml.train_logistic_regression(train, epochs=200)
print([round(x, 4) for x in logistic.loss_history[::50]])
