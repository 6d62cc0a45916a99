"""
Filename: plugins_test.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Tests for the plug-in factory and the built-in plug-ins.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import pytest
from blockmarket.defaults import SCORE_SCALE
from blockmarket.market.types import BidRecord, TradeType
from blockmarket.policy.builtin.max_scalar import MaxScalar
from blockmarket.policy.builtin.weighted_sum import WeightedSumMax
from blockmarket.policy.plugins import PolicyPlugin, PolicyPlugins
from blockmarket.sys.factories.plugins import PluginFactory

from ._market import committee_ad


def bid_with(content=b"", payment=None):
    return BidRecord(b"b" * 32, b"a" * 32, "alice", content, payment, None, (2, 0))


class Constant(PolicyPlugin):
    name = "constant"

    def evaluate(self, bid, ad):
        return (1,)

    def rank(self, scores, ad):
        return scores[0]


# ---------------------------------------------------------------------------
# Factory
# ---------------------------------------------------------------------------

def test_builtins_are_registered():
    assert {"weighted-sum-max", "max-scalar"} <= set(PluginFactory.available())
    assert isinstance(PluginFactory().get("max-scalar"), MaxScalar)


def test_instances_are_cached():
    assert PluginFactory().get("weighted-sum-max") is PluginFactory().get("weighted-sum-max")


def test_unknown_plugin():
    with pytest.raises(KeyError, match="Unknown plug-in 'nope'"):
        PluginFactory().get("nope")


def test_register_and_bind():
    PluginFactory.register("constant", Constant)
    plugins = PolicyPlugins.from_names({"custom": "constant"})
    assert isinstance(plugins.plugin_for(TradeType.CUSTOM), Constant)
    assert plugins.names() == {"custom": "constant"}
    assert not plugins.has(TradeType.COMMITTEE_CUSTOM)


def test_custom_validation_callback():
    assert PolicyPlugins().accepts(None, None)
    assert not PolicyPlugins(custom_validation=lambda tx, view: False).accepts(None, None)


# ---------------------------------------------------------------------------
# Built-ins
# ---------------------------------------------------------------------------

def test_weighted_sum_reads_content_as_features():
    plugin = WeightedSumMax()
    ad = committee_ad()
    assert plugin.evaluate(bid_with(b"1, 2.5,3"), ad) == (SCORE_SCALE, 2_500_000, 3 * SCORE_SCALE)
    assert plugin.evaluate(bid_with(b"draft"), ad) == ()
    assert plugin.evaluate(bid_with(b"\xff"), ad) == ()


def test_weighted_sum_rank():
    plugin = WeightedSumMax()
    ad = committee_ad()
    assert plugin.rank([(0, 0, 25), (10, 0, 0), (0, 14, 0)], ad) == (10, 0, 0)


def test_weighted_sum_ties_take_greatest_vector():
    plugin = WeightedSumMax()
    ad = committee_ad(weights=None, score_dim=None)
    assert plugin.rank([(5, 1), (6, 0), (2, 3)], ad) == (6, 0)


def test_weighted_sum_is_exact_beyond_64_bits():
    plugin = WeightedSumMax()
    ad = committee_ad()
    big = (2 ** 62, 2 ** 62, 2 ** 62)
    assert plugin.weighted(big, ad) == 6 * 2 ** 62
    assert plugin.rank([(0, 0, 1), big], ad) == big


def test_max_scalar():
    plugin = MaxScalar()
    assert plugin.evaluate(bid_with(payment=40), None) == (40,)
    assert plugin.evaluate(bid_with(), None) == (0,)
    assert plugin.rank([(3,), (9,), (4,)], None) == (9,)


def test_preprocess_defaults_to_identity():
    assert MaxScalar().preprocess(b"raw") == b"raw"
