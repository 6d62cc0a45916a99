"""
Filename: user.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    User requests and the handlers that turn them into transactions. Label
    references are resolved against the requesting node's own ledger.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Tuple

from ..chain.error import Rule, Stage, ValidationFailed
from ..chain.tx import FundsAttachment, TransactionEnvelope, TxKind
from ..market.commit import commit_reserve_price
from ..market.types import (
    AdRecord,
    ArbitrationPayload,
    BidPayload,
    DeliveryRecordPayload,
    DisputeResolutionPayload,
    EvaluationPayload,
    ItemAdvertisement,
    Score,
    TradeType,
)

if TYPE_CHECKING:
    from .node import Node


@dataclass(frozen=True)
class AdvertiseRequest:
    label: str
    trade_type: TradeType
    sale_duration: int
    reveal_flag: bool = False
    reserve: Optional[int] = None
    start_price: Optional[int] = None
    bid_duration: Optional[int] = None
    reveal_duration: Optional[int] = None
    eval_duration: Optional[int] = None
    bid_increment: Optional[int] = None
    payment: Optional[int] = None
    deposit: Optional[int] = None
    committee: Optional[Tuple[str, ...]] = None
    physical: bool = False
    item: str = ""
    score_dim: Optional[int] = None
    weights: Optional[Tuple[int, ...]] = None
    safety_window: Optional[int] = None


@dataclass(frozen=True)
class BidRequest:
    ad_label: str
    content: str
    price: Optional[int] = None
    deposit: Optional[int] = None
    label: str = ""


@dataclass(frozen=True)
class EvaluateRequest:
    ad_label: str
    decision: Optional[str] = None
    bid_label: Optional[str] = None
    score: Optional[Score] = None


@dataclass(frozen=True)
class DisputeRequest:
    ad_label: str


@dataclass(frozen=True)
class ResolveRequest:
    ad_label: str
    refundee: str


@dataclass(frozen=True)
class DeliverRequest:
    ad_label: str


def _ad(node: "Node", label: str) -> AdRecord:
    ad = node.state.ad_by_label(label)
    if ad is None:
        raise ValidationFailed(Stage.PLATFORM, Rule.UNKNOWN_ADVERTISEMENT, label)
    return ad


def _bid_id(node: "Node", ad: AdRecord, label: str) -> bytes:
    bid = node.state.bid_by_label(ad.ad_id, label)
    if bid is None:
        raise ValidationFailed(Stage.PLATFORM, Rule.UNKNOWN_BID, label)
    return bid.bid_id


def handle_user_advertise(node: "Node", req: AdvertiseRequest) -> TransactionEnvelope:
    """Build an advertisement. A secret reserve is committed with a fresh salt
    and kept in the supplier's memory until revelation; a reserve without
    the revelation flag is published as is.

    :param node: supplier node
    :param req: advertisement request
    :return: the advertisement transaction
    """
    reserve_hash = None
    public_reserve = None
    salt = None

    if req.reveal_flag:
        if req.reserve is None:
            raise ValidationFailed(Stage.PLATFORM, Rule.MISSING_REVEAL_HASH, req.label)
        salt = node.draw_salt()
        reserve_hash = commit_reserve_price(req.reserve, salt, node.ctx.min_salt_bytes)
    elif req.reserve is not None:
        public_reserve = req.reserve

    ad = ItemAdvertisement(
        label=req.label,
        item=(req.item or req.label).encode("utf-8"),
        trade_type=req.trade_type,
        sale_duration=req.sale_duration,
        reveal_flag=req.reveal_flag,
        start_price=req.start_price,
        bid_duration=req.bid_duration,
        reveal_duration=req.reveal_duration,
        eval_duration=req.eval_duration,
        bid_increment=req.bid_increment,
        reserve_hash=reserve_hash,
        committee=req.committee,
        public_reserve=public_reserve,
        physical=req.physical,
        safety_window=req.safety_window,
        score_dim=req.score_dim,
        weights=req.weights,
    )

    tx = node.make_tx(TxKind.ADVERTISEMENT, ad, FundsAttachment(req.payment, req.deposit))

    if salt is not None:
        node.reserves[tx.tx_id] = (req.reserve, salt)

    return tx


def handle_user_bid(node: "Node", req: BidRequest) -> TransactionEnvelope:
    """Build a bid, passing its content through the trade type's plug-in
    preprocessing hook when one is bound.

    :param node: consumer node
    :param req: bid request
    :return: the bid transaction
    """
    ad = _ad(node, req.ad_label)
    content = req.content.encode("utf-8")

    plugins = node.ctx.plugins
    if plugins.has(ad.ad.trade_type):
        content = plugins.plugin_for(ad.ad.trade_type).preprocess(content)

    return node.make_tx(TxKind.BID, BidPayload(ad.ad_id, content, req.label),
                        FundsAttachment(req.price, req.deposit))


def handle_user_evaluate(node: "Node", req: EvaluateRequest) -> TransactionEnvelope:
    ad = _ad(node, req.ad_label)

    if req.decision is not None:
        payload = EvaluationPayload(ad.ad_id, decision=_bid_id(node, ad, req.decision))
    else:
        payload = EvaluationPayload(ad.ad_id, bid_id=_bid_id(node, ad, req.bid_label), score=req.score)

    return node.make_tx(TxKind.EVALUATION, payload)


def handle_user_dispute(node: "Node", req: DisputeRequest) -> TransactionEnvelope:
    return node.make_tx(TxKind.ARBITRATION_REQUEST, ArbitrationPayload(_ad(node, req.ad_label).ad_id))


def handle_user_resolve(node: "Node", req: ResolveRequest) -> TransactionEnvelope:
    ad = _ad(node, req.ad_label)
    return node.make_tx(TxKind.DISPUTE_RESOLUTION, DisputeResolutionPayload(ad.ad_id, req.refundee))


def handle_user_deliver(node: "Node", req: DeliverRequest) -> TransactionEnvelope:
    return node.make_tx(TxKind.DELIVERY_RECORD, DeliveryRecordPayload(_ad(node, req.ad_label).ad_id))


HANDLERS = {
    AdvertiseRequest: handle_user_advertise,
    BidRequest: handle_user_bid,
    EvaluateRequest: handle_user_evaluate,
    DisputeRequest: handle_user_dispute,
    ResolveRequest: handle_user_resolve,
    DeliverRequest: handle_user_deliver,
}
