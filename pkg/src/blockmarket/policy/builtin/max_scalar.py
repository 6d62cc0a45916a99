"""
Filename: max_scalar.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Scores a bid by its attached payment and ranks by the maximum.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from typing import Sequence

from ...market.types import BidRecord, ItemAdvertisement, Score
from ..plugins import PolicyPlugin


class MaxScalar(PolicyPlugin):
    name = "max-scalar"

    def evaluate(self, bid: BidRecord, ad: ItemAdvertisement) -> Score:
        return (bid.price,)

    def rank(self, scores: Sequence[Score], ad: ItemAdvertisement) -> Score:
        return max(scores)
