"""
Filename: selection_test.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Tests for winning bid selection and committee score aggregation.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import pytest
from blockmarket.defaults import Policy
from blockmarket.market.types import AdRecord, BidRecord, EvaluationRecord, ItemAdvertisement, TradeType
from blockmarket.policy.error import BadRanking, MissingPlugin
from blockmarket.policy.plugins import PolicyPlugin, PolicyPlugins
from blockmarket.policy.prf import SeedMaterial, pseudo_random_select
from blockmarket.policy.selection import committee_scores, select_winning_bid

from ._market import committee_ad, dutch, english

AD_ID = b"a" * 32
SEED = SeedMaterial(b"t" * 32, AD_ID)


def placed(name, price=None, block=2, index=0, content=b""):
    return BidRecord(name.encode().ljust(32, b"."), AD_ID, name, content, price, None, (block, index))


def score(bid, values, sender="j1", block=10):
    return EvaluationRecord(b"e" * 32, AD_ID, sender, None, bid.bid_id, tuple(values), (block, 0))


def decision(bid, block=10, index=0):
    return EvaluationRecord(b"e" * 32, AD_ID, "j1", bid.bid_id, None, None, (block, index))


@pytest.fixture
def plugins():
    return PolicyPlugins.from_names(Policy().bindings)


def select(terms, bids, plugins, evals=()):
    return select_winning_bid(AdRecord(AD_ID, terms, "seller", 1), bids, list(evals), SEED, plugins)


# ---------------------------------------------------------------------------
# Committee scores
# ---------------------------------------------------------------------------

def test_scores_are_truncated_means():
    a, b = placed("a"), placed("b")
    evals = [score(a, (1, 5, -5)), score(a, (2, 6, -6), "j2"), score(b, (3, 3, 3))]
    assert committee_scores([a, b], evals) == {a.bid_id: (1, 5, -5), b.bid_id: (3, 3, 3)}


def test_decisions_and_foreign_bids_are_ignored():
    a = placed("a")
    evals = [decision(a), score(placed("x"), (9,)), score(a, (4,))]
    assert committee_scores([a], evals) == {a.bid_id: (4,)}


def test_unscored_bid_gives_no_scores():
    a, b = placed("a"), placed("b")
    assert committee_scores([a, b], [score(a, (1,))]) is None


def test_committee_mean_is_exact_beyond_64_bits():
    a = placed("a")
    evals = [score(a, (2 ** 62, -(2 ** 62))), score(a, (2 ** 62, -(2 ** 62) - 3), "j2")]
    assert committee_scores([a], evals) == {a.bid_id: (2 ** 62, -(2 ** 62) - 1)}


# ---------------------------------------------------------------------------
# Selection per trade type
# ---------------------------------------------------------------------------

def test_no_bids_no_winner(plugins):
    assert select(english(), [], plugins) is None


def test_english_picks_among_the_highest(plugins):
    low, high1, high2 = placed("low", 100), placed("h1", 140, 3), placed("h2", 140, 4)
    assert select(english(), [low, high1, high2], plugins) == pseudo_random_select([high1, high2], SEED)


def test_english_unique_maximum(plugins):
    bids = [placed("a", 100), placed("b", 150, 3), placed("c", 120, 4)]
    assert select(english(), bids, plugins).sender == "b"


def test_dutch_picks_among_all_bids(plugins):
    bids = [placed("a", 90, 6), placed("b", 90, 7)]
    assert select(dutch(), bids, plugins) == pseudo_random_select(bids, SEED)


def test_committee_rank_takes_first_decision(plugins):
    ad = committee_ad(trade_type=TradeType.COMMITTEE_RANK, weights=None, score_dim=None)
    a, b = placed("a"), placed("b")
    evals = [decision(b, 11), decision(a, 10, 1)]
    assert select(ad, [a, b], plugins, evals) is a
    assert select(ad, [a, b], plugins) is None


def test_committee_custom_weighted_sum(plugins):
    d1, d2, d3 = placed("d1"), placed("d2", block=3), placed("d3", block=4)
    evals = [score(d1, (6, 5, 4)), score(d2, (8, 7, 5)), score(d3, (7, 6, 9)),
             score(d1, (5, 5, 5), "j2"), score(d2, (9, 6, 4), "j2"), score(d3, (6, 6, 6), "j2")]
    assert select(committee_ad(), [d1, d2, d3], plugins, evals) is d2


def test_committee_custom_waits_for_every_bid(plugins):
    d1, d2 = placed("d1"), placed("d2")
    assert select(committee_ad(), [d1, d2], plugins, [score(d1, (1, 1, 1))]) is None


def test_custom_trade_uses_max_scalar(plugins):
    ad = ItemAdvertisement(label="job", item=b"job", trade_type=TradeType.CUSTOM, sale_duration=5)
    bids = [placed("a", 30), placed("b", 70, 3), placed("c", 50, 4)]
    assert select(ad, bids, plugins).sender == "b"


# ---------------------------------------------------------------------------
# Plug-in failures
# ---------------------------------------------------------------------------

class Rogue(PolicyPlugin):
    name = "rogue"

    def evaluate(self, bid, ad):
        return (bid.price,)

    def rank(self, scores, ad):
        return (-1,)


def test_rank_outside_input_is_rejected():
    ad = ItemAdvertisement(label="job", item=b"job", trade_type=TradeType.CUSTOM, sale_duration=5)
    with pytest.raises(BadRanking, match="plug-in: rogue"):
        select(ad, [placed("a", 10)], PolicyPlugins({TradeType.CUSTOM: Rogue()}))


def test_missing_plugin():
    ad = ItemAdvertisement(label="job", item=b"job", trade_type=TradeType.CUSTOM, sale_duration=5)
    with pytest.raises(MissingPlugin, match="trade type: custom"):
        select(ad, [placed("a", 10)], PolicyPlugins())
