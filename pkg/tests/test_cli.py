import hashlib

import pytest

from tweetstock.cli import main
from tweetstock.datasets import synthetic_embeddings, synthetic_prices, synthetic_tweets
from tweetstock.evaluate import METRIC_COLUMNS, read_roc_points
from tweetstock.features import save_embeddings
from tweetstock.ingest import write_stock_series, write_tweet_corpus


def write_inputs(root):
    root.mkdir(parents=True, exist_ok=True)
    write_tweet_corpus(synthetic_tweets(150, seed=1), root / "tweets.csv")
    write_stock_series(synthetic_prices(days=30, seed=1), root / "prices.csv")
    save_embeddings(synthetic_embeddings(8, seed=1), root / "emb.txt")
    return root


def digest(root):
    return {p.relative_to(root).as_posix(): hashlib.sha256(p.read_bytes()).hexdigest() for p in sorted(root.rglob("*")) if p.is_file()}


def run_pipeline(root):
    """Every subcommand once, chained the way a user would; returns the exit codes."""
    r = str(root)
    steps = [
        ["preprocess", "--in", f"{r}/tweets.csv", "--out", f"{r}/clean.csv"],
        ["train-sentiment", "--in", f"{r}/clean.csv", "--features", "all", "--algo", "all",
         "--embeddings", f"{r}/emb.txt", "--split", "0.8", "--seed", "7", "--trees", "15",
         "--out-dir", f"{r}/run"],
        ["featurize", "--in", f"{r}/clean.csv", "--features", "ngram", "--vocab", f"{r}/run/vocab.tsv",
         "--out", f"{r}/ngram.txt"],
        ["featurize", "--in", f"{r}/clean.csv", "--features", "word2vec", "--embeddings", f"{r}/emb.txt",
         "--out", f"{r}/w2v.txt"],
        ["predict", "--model", f"{r}/run/model_logistic_regression_ngram.txt", "--in", f"{r}/ngram.txt",
         "--out", f"{r}/pred.csv"],
        ["evaluate", "--in", f"{r}/pred.csv", "--out", f"{r}/eval.txt", "--kv-out", f"{r}/eval.kv"],
        ["roc", "--in", f"{r}/run/scores_random_forest_embedding.csv", "--out-dir", f"{r}/roc"],
        ["fill-gaps", "--in", f"{r}/prices.csv", "--out", f"{r}/filled.csv"],
        ["label-days", "--in", f"{r}/filled.csv", "--out", f"{r}/days.csv", "--price-field", "close"],
        ["build-windows", "--tweets", f"{r}/clean.csv", "--predictions", f"{r}/pred.csv",
         "--labels", f"{r}/days.csv", "--window", "3", "--out", f"{r}/windows.csv"],
        ["train-correlation", "--in", f"{r}/windows.csv", "--algo", "logistic", "--split", "0.7",
         "--out-dir", f"{r}/corr"],
    ]
    return [main(argv) for argv in steps]


@pytest.fixture(scope="module")
def pipeline(tmp_path_factory):
    root = write_inputs(tmp_path_factory.mktemp("cli") / "a")
    before = digest(root)
    codes = run_pipeline(root)
    return root, before, codes


class TestPipeline:
    def test_all_succeed(self, pipeline):
        _, _, codes = pipeline
        assert codes == [0] * len(codes)

    def test_inputs_untouched(self, pipeline):
        root, before, _ = pipeline
        after = digest(root)
        assert {k: after[k] for k in before} == before

    def test_expected_files(self, pipeline):
        root, _, _ = pipeline
        for name in [
            "clean.csv", "ngram.txt", "w2v.txt", "pred.csv", "eval.txt", "eval.kv", "filled.csv", "days.csv",
            "windows.csv", "run/vocab.tsv", "run/split.csv", "run/results.txt", "run/results.kv",
            "corr/report.txt", "corr/report.kv", "corr/manifest.csv", "corr/model.txt",
        ]:
            assert (root / name).is_file(), name
        for algo in ("random_forest", "logistic_regression", "svm_smo"):
            for kind in ("ngram", "embedding"):
                assert (root / f"run/model_{algo}_{kind}.txt").is_file()
                assert (root / f"run/scores_{algo}_{kind}.csv").is_file()

    def test_results_table(self, pipeline):
        root, _, _ = pipeline
        lines = (root / "run/results.txt").read_text().splitlines()
        assert "Word2vec" in lines[0] and "N-gram" in lines[0]
        assert all(lines[1].count(c) == 2 for c in METRIC_COLUMNS)
        assert len(lines) == 6

    def test_roc_files(self, pipeline):
        root, _, _ = pipeline
        names = sorted(p.name for p in (root / "roc").iterdir())
        assert names == ["roc_negative.tsv", "roc_neutral.tsv", "roc_positive.tsv"]
        for n in names:
            pts = read_roc_points(root / "roc" / n)
            assert pts[0] == (0.0, 0.0) and pts[-1] == (1.0, 1.0)

    def test_filled_prices_contiguous(self, pipeline):
        root, _, _ = pipeline
        rows = (root / "filled.csv").read_text().splitlines()
        assert rows[0] == "date,open,close,filled"
        assert len(rows) - 1 == 30 and any(r.endswith(",1") for r in rows)

    def test_byte_identical_rerun(self, pipeline, tmp_path):
        root, _, _ = pipeline
        again = write_inputs(tmp_path / "b")
        assert run_pipeline(again) == [0] * 11
        assert digest(again) == digest(root)


class TestExitCodes:
    def test_no_arguments(self, capsys):
        assert main([]) == 1
        assert "usage" in capsys.readouterr().err

    def test_unknown_subcommand(self):
        assert main(["train-everything"]) == 1

    def test_unknown_flag_writes_nothing(self, tmp_path):
        root = write_inputs(tmp_path)
        before = digest(root)
        assert main(["preprocess", "--in", str(root / "tweets.csv"), "--out", str(root / "x.csv"), "--bogus"]) == 1
        assert digest(root) == before

    def test_bad_choice(self, tmp_path):
        assert main(["train-sentiment", "--in", "x", "--algo", "naive-bayes"]) == 1

    def test_word2vec_needs_embeddings(self, tmp_path):
        root = write_inputs(tmp_path)
        assert main(["preprocess", "--in", str(root / "tweets.csv"), "--out", str(root / "c.csv")]) == 0
        assert main(["featurize", "--in", str(root / "c.csv"), "--features", "word2vec", "--out", str(root / "f")]) == 1

    def test_missing_input(self, tmp_path, capsys):
        assert main(["fill-gaps", "--in", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "o.csv")]) == 2
        assert "nope.csv" in capsys.readouterr().err

    def test_malformed_input(self, write, tmp_path):
        bad = write("p.csv", "date,open,close\n2015-09-01,1,oops\n")
        assert main(["fill-gaps", "--in", str(bad), "--out", str(tmp_path / "o.csv")]) == 2

    def test_not_utf8(self, tmp_path):
        (tmp_path / "t.csv").write_bytes(b"id,timestamp,text\na,2015-09-01,\xff\xfe\n")
        assert main(["preprocess", "--in", str(tmp_path / "t.csv"), "--out", str(tmp_path / "c.csv")]) == 2

    def test_model_feature_mismatch(self, pipeline, tmp_path):
        root, _, _ = pipeline
        code = main(["predict", "--model", str(root / "run/model_logistic_regression_ngram.txt"),
                     "--in", str(root / "w2v.txt"), "--out", str(tmp_path / "p.csv")])
        assert code == 2

    def test_unlabeled_training_file(self, write, tmp_path):
        clean = write("c.csv", "id,timestamp,tokens,label\na,2015-09-01T00:00:00Z,good,\n")
        assert main(["train-sentiment", "--in", str(clean), "--features", "ngram", "--out-dir", str(tmp_path)]) == 2

    def test_help(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["--help"])
        assert info.value.code == 0
        assert "train-sentiment" in capsys.readouterr().out
