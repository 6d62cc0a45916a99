"""
Filename: generator.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Randomized English auction scenarios for oracle campaigns. All
    randomness is drawn from a generator seeded with the scenario seed.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import numpy as np

from typing import List

from ..chain.tx import Role
from ..market.types import TradeType
from ..roles.user import AdvertiseRequest, BidRequest
from .scenario import NodeDecl, Scenario, ScenarioEvent

BIDDERS = ("c1", "c2", "c3")
AD_LABEL = "lot"


def campaign_roster() -> List[NodeDecl]:
    return [
        NodeDecl("p1", frozenset({Role.PROPOSER}), 0),
        NodeDecl("p2", frozenset({Role.PROPOSER}), 0),
        NodeDecl("seller", frozenset({Role.SUPPLIER}), 1_000),
    ] + [NodeDecl(c, frozenset({Role.CONSUMER}), 1_000_000, interest=(AD_LABEL,)) for c in BIDDERS]


def random_english_scenario(seed: int, max_bids: int = 20, max_blocks: int = 30) -> Scenario:
    """An English auction with up to `max_bids` valid bids, optionally with a
    secret reserve and a supplier that withholds it.

    :param seed: scenario seed
    :param max_bids: upper bound on the number of bids
    :param max_blocks: block budget of the run
    :return: the scenario
    """
    rng = np.random.default_rng(seed)

    sale = int(rng.integers(4, 16))
    reveal = bool(rng.random() < 0.3)
    start = int(rng.integers(10, 100))
    inc = int(rng.integers(1, 10))

    ad = AdvertiseRequest(
        label=AD_LABEL,
        trade_type=TradeType.ENGLISH,
        sale_duration=sale,
        reveal_flag=reveal,
        reserve=start + int(rng.integers(0, 120)) if reveal else None,
        start_price=start,
        reveal_duration=int(rng.integers(1, 4)) if reveal else None,
        bid_increment=inc,
        deposit=int(rng.integers(1, 50)) if rng.random() < 0.5 else None,
    )

    nodes = campaign_roster()
    if reveal and rng.random() < 0.3:
        nodes[2] = NodeDecl("seller", frozenset({Role.SUPPLIER}), 1_000, withhold_reveal=True)

    events = [ScenarioEvent(1, "seller", ad)]

    # blocks 2 .. sale end - 1 accept bids for an advertisement in block 1
    count = int(rng.integers(0, max_bids + 1))
    blocks = np.sort(rng.integers(2, 1 + sale, size=count))
    current = None

    for k, at in enumerate(blocks):
        if current is None:
            price = start + int(rng.integers(0, 3)) * inc
        elif rng.random() < 0.35:
            price = current
        else:
            price = current + int(rng.integers(1, 4)) * inc
        current = price

        bidder = BIDDERS[int(rng.integers(0, len(BIDDERS)))]
        deposit = 5 if rng.random() < 0.5 else None
        events.append(ScenarioEvent(int(at), bidder,
                                    BidRequest(AD_LABEL, "", price, deposit, label=f"b{k + 1}")))

    return Scenario(seed=seed, nodes=nodes, events=events, max_blocks=max_blocks, name=f"english-{seed}")
