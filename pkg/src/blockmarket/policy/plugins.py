"""
Filename: plugins.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Contract for use-case evaluation and ranking plug-ins, and the set of
    plug-ins bound to trade types for one engine.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, Mapping, Optional, Sequence

from ..market.types import BidRecord, ItemAdvertisement, Score, TradeType
from .error import BadRanking, MissingPlugin

# (transaction, ledger view) -> accept
CustomValidation = Callable[[Any, Any], bool]


class PolicyPlugin(ABC):
    """A use-case plug-in. Both functions must be pure: every node calls them
    on the same ledger data and must reach the same result.
    """
    name: str = "abstract"

    @abstractmethod
    def evaluate(self, bid: BidRecord, ad: ItemAdvertisement) -> Score:
        """Score one bid.

        :param bid: bid record
        :param ad: advertisement the bid answers
        :return: score vector
        """
        pass

    @abstractmethod
    def rank(self, scores: Sequence[Score], ad: ItemAdvertisement) -> Score:
        """Pick the winning score.

        :param scores: non-empty list of score vectors
        :param ad: advertisement being matched
        :return: an element of `scores`
        """
        pass

    def preprocess(self, content: bytes) -> bytes:
        """Hook applied to bid content before the bid is broadcast."""
        return content

    def checked_rank(self, scores: Sequence[Score], ad: ItemAdvertisement) -> Score:
        best = self.rank(scores, ad)
        if best not in scores:
            raise BadRanking(self.name, best)
        return best


class PolicyPlugins:
    """Plug-ins bound per trade type plus an optional use-case validation callback."""

    def __init__(self,
                 bindings: Optional[Mapping[TradeType, PolicyPlugin]] = None,
                 custom_validation: Optional[CustomValidation] = None):
        self.bindings: Dict[TradeType, PolicyPlugin] = dict(bindings or {})
        self.custom_validation = custom_validation

    @classmethod
    def from_names(cls,
                   names: Mapping[str, str],
                   custom_validation: Optional[CustomValidation] = None) -> "PolicyPlugins":
        """Bind registered plug-ins by name.

        :param names: trade type name -> plug-in name
        :param custom_validation: optional use-case callback
        :return: the bound plug-ins
        """
        from ..sys.factories.plugins import PluginFactory

        factory = PluginFactory()
        return cls({TradeType(t): factory.get(p) for t, p in names.items()}, custom_validation)

    def plugin_for(self, trade_type: TradeType) -> PolicyPlugin:
        if trade_type not in self.bindings:
            raise MissingPlugin(trade_type.value)
        return self.bindings[trade_type]

    def has(self, trade_type: TradeType) -> bool:
        return trade_type in self.bindings

    def names(self) -> Dict[str, str]:
        return {t.value: p.name for t, p in self.bindings.items()}

    def accepts(self, tx, view) -> bool:
        if self.custom_validation is None:
            return True
        return bool(self.custom_validation(tx, view))
