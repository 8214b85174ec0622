import datetime as dt
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tweetstock.ingest import Tweet
from tweetstock.preprocess import (
    clean_tokens,
    default_stopwords,
    load_stopwords,
    normalize_text,
    preprocess,
    read_clean_tweets,
    remove_stopwords,
    tokenize,
    write_clean_tweets,
)

STAMP = dt.datetime(2015, 9, 1, tzinfo=dt.timezone.utc)


def tweet(text, label=None):
    return Tweet("t", STAMP, text, label)


@pytest.mark.parametrize(
    "raw, expected",
    [
        ("#Microsoft", "microsoft"),
        ("@Billgates", "user"),
        ("coooooooool!", "cool!"),
        ("see http://nyti.ms/1U9a1oV now", "see url now"),
        ("www.microsoft.com/en-us rocks", "url rocks"),
        ("HTTPS://X.Y", "url"),
        ("soooo GOOOOD", "soo good"),
        ("aaa111bbb", "aa111bb"),
        ("", ""),
    ],
)
def test_normalize_text(raw, expected):
    assert normalize_text(raw) == expected


@pytest.mark.parametrize("raw", ["a@@a", "h#ttp://x", "x@#a", "##tag", "ww#w.x", "co#oo#ol"])
def test_normalize_reaches_fixed_point(raw):
    once = normalize_text(raw)
    assert normalize_text(once) == once


def test_normalize_rule_order():
    # URL before handle: the @ inside the link must not become USER
    assert normalize_text("http://x.com/@bob @bob") == "url user"


@pytest.mark.parametrize(
    "text, expected",
    [
        ("microsoft is launching a new product", ["microsoft", "is", "launching", "a", "new", "product"]),
        ("great :) !!", ["great"]),
        ("", []),
        ("  spaced\tout\n words ", ["spaced", "out", "words"]),
        ('"quoted," (paren) $msft', ["quoted", "paren", "msft"]),
        ("<3 :-( ;) ...", ["3"]),
        ("don't", ["don't"]),
    ],
)
def test_tokenize(text, expected):
    assert tokenize(text) == expected


class TestStopwords:
    def test_example_sentence(self):
        tokens = ["microsoft", "is", "launching", "a", "new", "product"]
        assert remove_stopwords(tokens) == ["microsoft", "launching", "new", "product"]

    def test_named_words(self):
        assert remove_stopwords(["a", "is", "the", "with"]) == []

    def test_empty(self):
        assert remove_stopwords([]) == []

    def test_list_size(self):
        assert len(default_stopwords()) == 127

    def test_custom_list(self, write):
        stop = load_stopwords(write("stop.txt", "Microsoft\nnew\n\n"))
        assert remove_stopwords(["microsoft", "is", "new"], stop) == ["is"]


class TestPreprocess:
    def test_table_tweet(self):
        clean = preprocess(tweet("Thanks @Microsoft , delivered my Surface Pro 3 power plug"))
        assert clean.tokens == ("thanks", "user", "delivered", "surface", "pro", "3", "power", "plug")
        assert "my" not in clean.tokens

    def test_hashtag_and_url(self):
        assert preprocess(tweet("#Windows http://a.b")).tokens == ("windows", "url")

    def test_all_stopwords(self):
        assert preprocess(tweet("a is the")).tokens == ()

    def test_carries_metadata(self):
        clean = preprocess(tweet("Hello", label=2))
        assert (clean.id, clean.timestamp, clean.label, clean.source_text) == ("t", STAMP, 2, "Hello")

    def test_clean_file_roundtrip(self, tmp_path):
        tweets = [preprocess(tweet("Happy #anniversary @Microsoft!", 1)), preprocess(tweet("the", None))]
        path = tmp_path / "clean.csv"
        write_clean_tweets(tweets, path)
        back = read_clean_tweets(path)
        assert [(t.id, t.tokens, t.timestamp, t.label) for t in back] == [
            (t.id, t.tokens, t.timestamp, t.label) for t in tweets
        ]


tweet_text = st.lists(
    st.sampled_from(list("aAbBoOxX019 @#:/.!?,'-_()") + ["http://", "www.", "é", "ß", "😀", "\t"]),
    max_size=40,
).map("".join)


class TestProperties:
    @given(st.lists(st.sampled_from(list("hHtTpPwWsS:/.@#oO ")), max_size=30).map("".join))
    @settings(max_examples=500)
    def test_normalize_fixed_point(self, text):
        once = normalize_text(text)
        assert normalize_text(once) == once

    @given(tweet_text)
    def test_deterministic(self, text):
        assert clean_tokens(text) == clean_tokens(text)

    @given(tweet_text)
    def test_token_level_idempotent(self, text):
        tokens = clean_tokens(text)
        assert clean_tokens(" ".join(tokens)) == tokens

    @given(tweet_text)
    def test_tokens_clean(self, text):
        stop = default_stopwords()
        for t in clean_tokens(text):
            assert t == t.lower()
            assert not any(ch.isspace() for ch in t)
            assert t not in stop
            assert "http://" not in t and "www." not in t
            assert re.search(r"@\w", t) is None

    @given(st.text(alphabet=st.sampled_from(list("abcdefgh XYZ!?.,")), max_size=80))
    def test_no_growth_without_sentinels(self, text):
        assert len(normalize_text(text)) <= len(text)
