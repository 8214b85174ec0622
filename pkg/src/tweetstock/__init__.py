"""Tweet sentiment classification and next-day stock movement prediction.

Stages, each usable on its own:

* :mod:`tweetstock.ingest` -- tweet and price files, calendar gap filling
* :mod:`tweetstock.preprocess` -- normalization, tokenization, stopwords
* :mod:`tweetstock.features` -- binary n-gram and summed-embedding vectors
* :mod:`tweetstock.ml` -- random forest, softmax regression, SMO SVM
* :mod:`tweetstock.evaluate` -- weighted metrics, ROC/AUC, report tables
* :mod:`tweetstock.correlate` -- day labels, sentiment windows, movement model
"""

__version__ = "0.1.0"
