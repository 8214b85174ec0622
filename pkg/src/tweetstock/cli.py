"""``tweetstock`` command line: one subcommand per pipeline stage.

Exit status is 0 on success, 1 on a usage error and 2 when an input file is
malformed or its data cannot support the request. Diagnostics go to stderr;
data goes to files (tables are also echoed to stdout).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import ml
from .correlate import (
    DEFAULT_WINDOW,
    build_window_instances,
    label_trading_days,
    read_day_labels,
    read_instances,
    run_correlation_experiment,
    write_day_labels,
    write_instances,
)
from .errors import DataError, NumericalError
from .evaluate import (
    evaluate_predictions,
    format_key_values,
    format_report,
    format_results_table,
    one_vs_rest_curves,
    write_roc_points,
)
from .features import (
    DEFAULT_NGRAM_MAX,
    EMBEDDING,
    NGRAM,
    NgramVocabulary,
    build_ngram_vocabulary,
    load_embeddings,
    read_feature_file,
    write_feature_file,
)
from .ingest import fill_gaps, read_stock_series, read_tweet_corpus, write_stock_series
from .ml.dataset import vectors_to_matrix
from .pipeline import featurize, read_predictions, run_sentiment_experiment, write_predictions
from .preprocess import load_stopwords, preprocess_corpus, read_clean_tweets, write_clean_tweets

log = logging.getLogger("tweetstock")

FEATURE_KINDS = {"ngram": NGRAM, "word2vec": EMBEDDING}
ALGO_FLAGS = {
    "random-forest": ml.RANDOM_FOREST,
    "logistic": ml.LOGISTIC_REGRESSION,
    "smo": ml.SVM_SMO,
}
SENTIMENT_FILE_NAMES = {1: "positive", 0: "neutral", 2: "negative"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _add_hyperparameters(p):
    g = p.add_argument_group("hyperparameters")
    g.add_argument("--trees", type=int, default=100, help="random forest size")
    g.add_argument("--features-per-split", type=int, default=None, help="default floor(sqrt(d))")
    g.add_argument("--l2", type=float, default=1e-8)
    g.add_argument("--learning-rate", type=float, default=0.01)
    g.add_argument("--epochs", type=int, default=500)
    g.add_argument("--c", type=float, default=1.0, help="SMO box constraint")
    g.add_argument("--tolerance", type=float, default=1e-3, help="SMO KKT tolerance")
    g.add_argument("--max-passes", type=int, default=10)


def _trainer_params(args) -> dict:
    return {
        ml.RANDOM_FOREST: {"num_trees": args.trees, "features_per_split": args.features_per_split},
        ml.LOGISTIC_REGRESSION: {"l2": args.l2, "learning_rate": args.learning_rate, "epochs": args.epochs},
        ml.SVM_SMO: {"c": args.c, "tolerance": args.tolerance, "max_passes": args.max_passes},
    }


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tweetstock", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("preprocess", help="normalize, tokenize and stopword-filter a tweet file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--stopwords", help="one stopword per line; replaces the bundled list")

    p = sub.add_parser("featurize", help="turn cleaned tweets into a feature file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--features", choices=sorted(FEATURE_KINDS), required=True)
    p.add_argument("--ngram-max", type=int, default=DEFAULT_NGRAM_MAX)
    p.add_argument("--vocab", help="existing vocabulary to vectorize against")
    p.add_argument("--vocab-out", help="where to save a newly built vocabulary")
    p.add_argument("--embeddings", help="word-vector text file (word2vec features)")

    p = sub.add_parser("train-sentiment", help="split, train and evaluate sentiment classifiers")
    p.add_argument("--in", dest="inp", required=True, help="cleaned tweets with a label column")
    p.add_argument("--out-dir", default=".")
    p.add_argument("--features", choices=sorted(FEATURE_KINDS) + ["all"], default="word2vec")
    p.add_argument("--algo", choices=sorted(ALGO_FLAGS) + ["all"], default="random-forest")
    p.add_argument("--split", type=float, default=0.9)
    p.add_argument("--split-mode", choices=["ordered", "shuffled"], default="ordered")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ngram-max", type=int, default=DEFAULT_NGRAM_MAX)
    p.add_argument("--embeddings")
    _add_hyperparameters(p)

    p = sub.add_parser("predict", help="score a feature file with a saved model")
    p.add_argument("--model", required=True)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("evaluate", help="metrics report from a predictions file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", help="plain-text report (default: stdout)")
    p.add_argument("--kv-out", help="key=value report")

    p = sub.add_parser("roc", help="one-vs-rest ROC point files from a predictions file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out-dir", default=".")

    p = sub.add_parser("fill-gaps", help="insert missing calendar days into a price file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("label-days", help="mark each day 1 (up or flat) or 0 (down)")
    p.add_argument("--in", dest="inp", required=True, help="gap-filled price file")
    p.add_argument("--out", required=True)
    p.add_argument("--price-field", choices=["open", "close"], default="close")

    p = sub.add_parser("build-windows", help="sentiment counts over the days before each labeled day")
    p.add_argument("--tweets", required=True, help="cleaned tweets (timestamp, optional label)")
    p.add_argument("--predictions", help="model predictions for tweets lacking a human label")
    p.add_argument("--labels", required=True, help="day label file")
    p.add_argument("--out", required=True)
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--drop-empty", action="store_true")

    p = sub.add_parser("train-correlation", help="train and evaluate the movement classifier")
    p.add_argument("--in", dest="inp", required=True, help="window instance file")
    p.add_argument("--out-dir", default=".")
    p.add_argument("--algo", choices=["logistic", "smo"], default="logistic")
    p.add_argument("--split", type=float, default=0.8)
    p.add_argument("--split-mode", choices=["ordered", "shuffled"], default="ordered")
    p.add_argument("--seed", type=int, default=0)
    _add_hyperparameters(p)
    return parser


# -- subcommands --------------------------------------------------------------


def cmd_preprocess(args):
    stop = load_stopwords(args.stopwords) if args.stopwords else None
    tweets = read_tweet_corpus(args.inp)
    clean = preprocess_corpus(tweets, stop)
    write_clean_tweets(clean, args.out)
    log.info("preprocessed %d tweets", len(clean))


def _load_table(path):
    if not path:
        raise UsageError("word2vec features need --embeddings")
    return load_embeddings(path)


def cmd_featurize(args):
    tweets = read_clean_tweets(args.inp)
    kind = FEATURE_KINDS[args.features]
    vocab = table = None
    if kind == NGRAM:
        if args.vocab:
            vocab = NgramVocabulary.load(args.vocab)
        else:
            vocab = build_ngram_vocabulary(tweets, args.ngram_max)
        if args.vocab_out:
            vocab.save(args.vocab_out)
        dim = len(vocab)
    else:
        table = _load_table(args.embeddings)
        dim = table.dimension
    write_feature_file(featurize(tweets, kind, vocab, table), args.out, kind, dim)


def cmd_train_sentiment(args):
    kinds = [EMBEDDING, NGRAM] if args.features == "all" else [FEATURE_KINDS[args.features]]
    algos = list(ALGO_FLAGS.values()) if args.algo == "all" else [ALGO_FLAGS[args.algo]]
    table = _load_table(args.embeddings) if EMBEDDING in kinds else None
    tweets = read_clean_tweets(args.inp)
    if not any(t.label is not None for t in tweets):
        raise DataError(f"{args.inp}: no labeled tweets")
    exp = run_sentiment_experiment(
        tweets, kinds, algos, args.split, args.split_mode, args.seed, args.ngram_max, table, _trainer_params(args)
    )
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    kv = []
    for run in exp.runs:
        tag = f"{run.algorithm}_{run.kind}"
        ml.save_model(run.model, out / f"model_{tag}.txt")
        write_predictions(out / f"scores_{tag}.csv", run.test_ids, run.model.classes, run.test_scores, run.test_truth)
        kv.append(format_key_values(run.report, prefix=f"{run.kind}.{run.algorithm}."))
    if exp.vocabulary is not None:
        exp.vocabulary.save(out / "vocab.tsv")
    (out / "split.csv").write_text(
        "id,part\n" + "".join(f"{i},train\n" for i in exp.train_ids) + "".join(f"{i},test\n" for i in exp.test_ids),
        encoding="utf-8",
    )
    table_text = format_results_table(exp.results())
    (out / "results.txt").write_text(table_text, encoding="utf-8")
    (out / "results.kv").write_text("".join(kv), encoding="utf-8")
    sys.stdout.write(table_text)


def cmd_predict(args):
    model = ml.load_model(args.model)
    kind, dim, vectors = read_feature_file(args.inp)
    if kind != model.kind or dim != model.n_features:
        raise DataError(f"{args.inp}: {kind} features of dimension {dim} do not fit the model")
    if vectors:
        scores = model.predict_scores(vectors_to_matrix(vectors))
    else:
        scores = np.zeros((0, len(model.classes)))
    write_predictions(args.out, [v.id for v in vectors], model.classes, scores, [v.label for v in vectors])


def _report_from_predictions(path):
    ids, classes, scores, truth, predicted = read_predictions(path)
    keep = [i for i, t in enumerate(truth) if t is not None]
    if not keep:
        raise DataError(f"{path}: no rows carry a true label")
    return classes, scores[keep], [truth[i] for i in keep], [predicted[i] for i in keep]


def cmd_evaluate(args):
    classes, _, truth, predicted = _report_from_predictions(args.inp)
    report = evaluate_predictions(truth, predicted, classes)
    text = format_report(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.kv_out:
        Path(args.kv_out).write_text(format_key_values(report), encoding="utf-8")


def cmd_roc(args):
    classes, scores, truth, _ = _report_from_predictions(args.inp)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    sentiment = set(classes) == set(SENTIMENT_FILE_NAMES)
    for c, curve in one_vs_rest_curves(scores, truth, classes).items():
        name = SENTIMENT_FILE_NAMES[c] if sentiment else f"class_{c}"
        write_roc_points(curve, out / f"roc_{name}.tsv")
        sys.stdout.write(f"{name}\tAUC={curve.auc:.3f}\n")


def cmd_fill_gaps(args):
    write_stock_series(fill_gaps(read_stock_series(args.inp)), args.out)


def cmd_label_days(args):
    series = read_stock_series(args.inp)
    if not series.is_contiguous():
        log.warning("%s has calendar gaps; run fill-gaps first", args.inp)
    write_day_labels(label_trading_days(series, args.price_field), args.out)


def cmd_build_windows(args):
    tweets = read_clean_tweets(args.tweets)
    predicted = {}
    if args.predictions:
        ids, _, _, _, labels = read_predictions(args.predictions)
        predicted = dict(zip(ids, labels))
    pairs = []
    for t in tweets:
        sentiment = t.label if t.label is not None else predicted.get(t.id)
        if sentiment is None or t.timestamp is None:
            continue
        pairs.append((t.timestamp.date(), sentiment))
    log.info("%d of %d tweets have a sentiment and a date", len(pairs), len(tweets))
    instances = build_window_instances(pairs, read_day_labels(args.labels), args.window, args.drop_empty)
    write_instances(instances, args.out)


def cmd_train_correlation(args):
    instances = read_instances(args.inp)
    algo = ALGO_FLAGS[args.algo]
    params = _trainer_params(args)[algo]
    result = run_correlation_experiment(instances, algo, args.split, args.split_mode, args.seed, **params)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    text = format_report(result.report, title=f"movement classifier ({args.algo})")
    (out / "report.txt").write_text(text, encoding="utf-8")
    (out / "report.kv").write_text(format_key_values(result.report), encoding="utf-8")
    (out / "manifest.csv").write_text(result.manifest(), encoding="utf-8")
    ml.save_model(result.model, out / "model.txt")
    sys.stdout.write(text)


COMMANDS = {
    "preprocess": cmd_preprocess,
    "featurize": cmd_featurize,
    "train-sentiment": cmd_train_sentiment,
    "predict": cmd_predict,
    "evaluate": cmd_evaluate,
    "roc": cmd_roc,
    "fill-gaps": cmd_fill_gaps,
    "label-days": cmd_label_days,
    "build-windows": cmd_build_windows,
    "train-correlation": cmd_train_correlation,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s: %(message)s", stream=sys.stderr
    )
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"tweetstock {args.command}: {exc}", file=sys.stderr)
        return 1
    except (DataError, NumericalError, OSError, UnicodeDecodeError) as exc:
        print(f"tweetstock {args.command}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"tweetstock {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
