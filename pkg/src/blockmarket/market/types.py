"""
Filename: types.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Domain records for every marketplace transaction payload, and the ledger
    records the chain state indexes them into. All records are immutable.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from enum import Enum
from typing import Optional, Tuple

from ..chain.error import Rule
from ..defaults import SCORE_SCALE
from .error import BadFixedPoint

Score = Tuple[int, ...]
Inclusion = Tuple[int, int]


class TradeType(Enum):
    """Price discovery and matching policy of an advertisement."""
    ENGLISH = "english"
    DUTCH = "dutch"
    COMMITTEE_RANK = "committee-rank"
    COMMITTEE_CUSTOM = "committee-custom"
    CUSTOM = "custom"

    @property
    def uses_committee(self) -> bool:
        return self in (TradeType.COMMITTEE_RANK, TradeType.COMMITTEE_CUSTOM)


class Component(Enum):
    """Part of a lock moved by a funds transaction."""
    PAYMENT = "payment"
    DEPOSIT = "deposit"


@dataclass(frozen=True)
class ItemAdvertisement:
    """Advertisement payload carrying the per-item trade parameters.

    The advertisement identifier is the id of the transaction carrying it; the
    payment and deposit travel as the transaction's funds attachment.
    """
    label: str
    item: bytes
    trade_type: TradeType
    sale_duration: int
    reveal_flag: bool = False
    start_price: Optional[int] = None
    bid_duration: Optional[int] = None
    reveal_duration: Optional[int] = None
    eval_duration: Optional[int] = None
    bid_increment: Optional[int] = None
    reserve_hash: Optional[bytes] = None
    committee: Optional[Tuple[str, ...]] = None
    public_reserve: Optional[int] = None
    physical: bool = False
    escrow: Optional[str] = None
    safety_window: Optional[int] = None
    score_dim: Optional[int] = None
    weights: Optional[Tuple[int, ...]] = None

    def violation(self) -> Optional[Rule]:
        """First violated advertisement invariant, if any.

        :return: the violated rule or None
        """
        for name in ("sale_duration", "bid_duration", "reveal_duration", "eval_duration",
                     "bid_increment", "safety_window", "score_dim"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                return Rule.BAD_DURATION

        if self.reveal_flag and self.reserve_hash is None:
            return Rule.MISSING_REVEAL_HASH
        if self.reveal_flag and self.reveal_duration is None:
            return Rule.MISSING_REVEAL_DURATION
        if self.reveal_flag and self.committee:
            return Rule.REVEAL_AND_COMMITTEE

        if self.trade_type.uses_committee:
            if not self.committee or self.eval_duration is None:
                return Rule.MISSING_COMMITTEE
            if self.eval_duration <= self.sale_duration:
                return Rule.EVAL_NOT_AFTER_SALE
        elif self.committee:
            return Rule.UNEXPECTED_COMMITTEE

        if self.trade_type is TradeType.ENGLISH:
            if self.start_price is None:
                return Rule.MISSING_START_PRICE
            if self.bid_increment is None:
                return Rule.MISSING_INCREMENT

        if self.trade_type is TradeType.DUTCH:
            if self.start_price is None:
                return Rule.MISSING_START_PRICE
            if self.bid_duration is None:
                return Rule.MISSING_BID_DURATION
            if self.bid_increment is None:
                return Rule.MISSING_INCREMENT

        if self.weights is not None and self.score_dim is not None and len(self.weights) != self.score_dim:
            return Rule.BAD_WEIGHTS

        return None


@dataclass(frozen=True)
class BidPayload:
    ad_id: bytes
    content: bytes
    label: str = ""


@dataclass(frozen=True)
class RevelationPayload:
    ad_id: bytes
    res_price: int
    salt: bytes


@dataclass(frozen=True)
class EvaluationPayload:
    """Either a full committee decision (`decision`) or a per-bid score vector."""
    ad_id: bytes
    decision: Optional[bytes] = None
    bid_id: Optional[bytes] = None
    score: Optional[Score] = None

    @property
    def is_decision(self) -> bool:
        return self.decision is not None


@dataclass(frozen=True)
class AssignmentPayload:
    ad_id: bytes
    winning_bid: bytes
    trigger_block: int
    escrow: Optional[str] = None
    safety_window: Optional[int] = None


@dataclass(frozen=True)
class NoAssignmentPayload:
    ad_id: bytes
    trigger_block: int


@dataclass(frozen=True)
class FundsUnlockPayload:
    lock_id: bytes
    component: Component
    ad_id: bytes


@dataclass(frozen=True)
class FundsTransferPayload:
    lock_id: bytes
    component: Component
    recipient: str
    ad_id: bytes


@dataclass(frozen=True)
class ArbitrationPayload:
    ad_id: bytes


@dataclass(frozen=True)
class DisputeResolutionPayload:
    ad_id: bytes
    refundee: str


@dataclass(frozen=True)
class EscrowReleasePayload:
    ad_id: bytes


@dataclass(frozen=True)
class DeliveryRecordPayload:
    ad_id: bytes


# ---------------------------------------------------------------------------
# Ledger records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdRecord:
    """An admitted advertisement together with where it sits in the ledger."""
    ad_id: bytes
    ad: ItemAdvertisement
    supplier: str
    block_number: int
    payment: Optional[int] = None
    deposit: Optional[int] = None


@dataclass(frozen=True)
class BidRecord:
    """An included bid. `inclusion` (block number, index in block) totally orders bids."""
    bid_id: bytes
    ad_id: bytes
    sender: str
    content: bytes
    payment: Optional[int]
    deposit: Optional[int]
    inclusion: Inclusion
    label: str = ""

    @property
    def price(self) -> int:
        return self.payment or 0


@dataclass(frozen=True)
class RevelationRecord:
    tx_id: bytes
    ad_id: bytes
    res_price: int
    salt: bytes
    inclusion: Inclusion


@dataclass(frozen=True)
class EvaluationRecord:
    tx_id: bytes
    ad_id: bytes
    sender: str
    decision: Optional[bytes]
    bid_id: Optional[bytes]
    score: Optional[Score]
    inclusion: Inclusion


@dataclass(frozen=True)
class OutcomeRecord:
    """The single terminal matching transaction of an advertisement."""
    tx_id: bytes
    ad_id: bytes
    assigned: bool
    winning_bid: Optional[bytes]
    trigger_block: int
    block_number: int


def to_fixed(text: str, scale: int = SCORE_SCALE) -> int:
    """Read a decimal string as a fixed-point integer, truncating extra digits.

    :param text: decimal number such as "7" or "-2.5"
    :param scale: fixed-point scale
    :return: integer value times scale
    """
    try:
        value = Decimal(text.strip())
    except InvalidOperation:
        raise BadFixedPoint(text)

    if not value.is_finite():
        raise BadFixedPoint(text)

    return int(value * scale)


def to_fixed_vector(text: str, scale: int = SCORE_SCALE) -> Score:
    """Read a comma-separated list of decimals as a fixed-point vector.

    :param text: e.g. "6,5.5,4"
    :param scale: fixed-point scale
    :return: tuple of integers
    """
    return tuple(to_fixed(part, scale) for part in text.split(",") if part.strip())
