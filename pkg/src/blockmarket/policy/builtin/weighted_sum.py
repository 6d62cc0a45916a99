"""
Filename: weighted_sum.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Weighted-sum ranking: the winning score vector maximizes the dot
    product with the advertisement weights.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import numpy as np

from typing import Sequence

from ...market.error import BadFixedPoint
from ...market.types import BidRecord, ItemAdvertisement, Score, to_fixed_vector
from ..plugins import PolicyPlugin


class WeightedSumMax(PolicyPlugin):
    name = "weighted-sum-max"

    def evaluate(self, bid: BidRecord, ad: ItemAdvertisement) -> Score:
        # Bid content is read as a decimal feature vector; anything else scores empty
        try:
            return to_fixed_vector(bid.content.decode("utf-8"))
        except (UnicodeDecodeError, BadFixedPoint):
            return ()

    @staticmethod
    def weighted(score: Score, ad: ItemAdvertisement) -> int:
        if not score:
            return 0

        # object dtype: Python integers never wrap
        vec = np.asarray(score, dtype=object)
        if ad.weights is not None and len(ad.weights) == len(score):
            weights = np.asarray(ad.weights, dtype=object)
        else:
            weights = np.ones(len(score), dtype=object)

        return int(np.dot(vec, weights))

    def rank(self, scores: Sequence[Score], ad: ItemAdvertisement) -> Score:
        # equal sums: lexicographically greatest vector
        return max(scores, key=lambda s: (self.weighted(s, ad), s))
