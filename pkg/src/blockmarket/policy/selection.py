"""
Filename: selection.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Winning bid selection for each trade type.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import numpy as np

from typing import Dict, List, Optional, Sequence

from ..market.types import AdRecord, BidRecord, EvaluationRecord, Score, TradeType
from .plugins import PolicyPlugins
from .prf import SeedMaterial, pseudo_random_select


def committee_scores(bids: Sequence[BidRecord],
                     evals: Sequence[EvaluationRecord]) -> Optional[Dict[bytes, Score]]:
    """Per-bid committee score: component-wise integer mean of the bid's
    per-bid evaluations, truncated toward zero.

    :param bids: bids of the advertisement
    :param evals: evaluations in the evaluation window
    :return: bid id -> score, or None when some bid has no evaluation
    """
    per_bid: Dict[bytes, List[Score]] = {b.bid_id: [] for b in bids}

    for ev in evals:
        if ev.score is not None and ev.bid_id in per_bid:
            per_bid[ev.bid_id].append(ev.score)

    if any(not scores for scores in per_bid.values()):
        return None

    result = {}
    for bid_id, scores in per_bid.items():
        # object dtype keeps exact integer arithmetic
        total = np.sum(np.asarray(scores, dtype=object), axis=0)
        result[bid_id] = tuple(_truncated_div(int(t), len(scores)) for t in total)

    return result


def _truncated_div(total: int, count: int) -> int:
    quotient = abs(total) // count
    return -quotient if total < 0 else quotient


def select_winning_bid(ad: AdRecord,
                       ad_bids: Sequence[BidRecord],
                       evals: Sequence[EvaluationRecord],
                       seed: SeedMaterial,
                       plugins: PolicyPlugins) -> Optional[BidRecord]:
    """Select the winning bid of an advertisement, or None.

    :param ad: advertisement record
    :param ad_bids: valid bids for the advertisement up to the trigger block
    :param evals: evaluations within the evaluation window, in inclusion order
    :param seed: tie-break seed material
    :param plugins: bound plug-ins
    :return: the winning bid or None
    """
    if not ad_bids:
        return None

    trade_type = ad.ad.trade_type

    if trade_type is TradeType.ENGLISH:
        best = max(b.price for b in ad_bids)
        return pseudo_random_select([b for b in ad_bids if b.price == best], seed)

    if trade_type is TradeType.DUTCH:
        return pseudo_random_select(list(ad_bids), seed)

    if trade_type is TradeType.COMMITTEE_RANK:
        by_id = {b.bid_id: b for b in ad_bids}
        decisions = sorted((e for e in evals if e.decision is not None), key=lambda e: e.inclusion)
        if not decisions:
            return None
        return by_id.get(decisions[0].decision)

    plugin = plugins.plugin_for(trade_type)

    if trade_type is TradeType.COMMITTEE_CUSTOM:
        scores = committee_scores(ad_bids, evals)
        if scores is None:
            return None
    else:
        scores = {b.bid_id: plugin.evaluate(b, ad.ad) for b in ad_bids}

    winning = plugin.checked_rank(list(scores.values()), ad.ad)

    return pseudo_random_select([b for b in ad_bids if scores[b.bid_id] == winning], seed)
