"""
ROC curves, one class against the rest
=======================================

Score a held-out split and trace a curve per sentiment class. The area
under each curve equals the chance that a random member of the class
outscores a random non-member.
"""

import numpy as np

from tweetstock import ml
from tweetstock.datasets import gaussian_blobs
from tweetstock.evaluate import auc_score, one_vs_rest_curves

# heavy overlap so the curves are not trivially perfect
data = gaussian_blobs(300, 4, spread=3.0, seed=7)
train, test = ml.split_dataset(data, 0.7, "shuffled", seed=7)
model = ml.train_logistic_regression(train)
scores = model.predict_scores(test.X)

names = {1: "positive", 0: "neutral", 2: "negative"}
for c, curve in one_vs_rest_curves(scores, test.y, data.classes).items():
    print(f"{names[c]:9} AUC={curve.auc:.3f}  {len(curve.points)} points")

# a small hand check: one misordered pair out of four
print(auc_score([0.9, 0.8, 0.7, 0.6], [True, False, True, False]))

# ties move together, so identical scores give the diagonal
print(auc_score(np.zeros(6), [1, 0, 1, 0, 1, 0]))
