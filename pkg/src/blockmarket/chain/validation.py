"""
Filename: validation.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Three-stage transaction validation. The chain stage checks form, sender
    and balance; the platform stage checks the marketplace rules of the
    transaction kind; the use-case stage runs the registered callback.

    A transaction is validated against a ledger view: the state obtained by
    applying every block up to the head and every earlier transaction of the
    block it is (or would be) included in.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable, Dict

from ..escrow.actions import raise_arbitration, record_delivery, release_after_safety_window, resolve_dispute
from ..market.commit import verify_reserve_price
from ..market.types import (
    ArbitrationPayload,
    AssignmentPayload,
    BidPayload,
    Component,
    DeliveryRecordPayload,
    DisputeResolutionPayload,
    EscrowReleasePayload,
    EvaluationPayload,
    FundsTransferPayload,
    FundsUnlockPayload,
    ItemAdvertisement,
    NoAssignmentPayload,
    RevelationPayload,
    TradeType,
)
from ..policy.plugins import PolicyPlugins
from ..policy.rules import validate_bid_for_trade
from .error import InsufficientBalance, Rule, Stage, ValidationFailed
from .tx import PROPOSER_KINDS, Role, Roster, TransactionEnvelope, TxKind

if TYPE_CHECKING:
    from .state import ChainState

PAYLOAD_TYPES = {
    TxKind.ADVERTISEMENT: ItemAdvertisement,
    TxKind.BID: BidPayload,
    TxKind.REVELATION: RevelationPayload,
    TxKind.EVALUATION: EvaluationPayload,
    TxKind.ASSIGNMENT: AssignmentPayload,
    TxKind.NO_ASSIGNMENT: NoAssignmentPayload,
    TxKind.FUNDS_UNLOCK: FundsUnlockPayload,
    TxKind.FUNDS_TRANSFER: FundsTransferPayload,
    TxKind.ARBITRATION_REQUEST: ArbitrationPayload,
    TxKind.DISPUTE_RESOLUTION: DisputeResolutionPayload,
    TxKind.ESCROW_RELEASE: EscrowReleasePayload,
    TxKind.DELIVERY_RECORD: DeliveryRecordPayload,
}

# Only these kinds may carry funds; every lock then belongs to one trade
FUNDED_KINDS = frozenset({TxKind.ADVERTISEMENT, TxKind.BID})


@dataclass
class ValidationContext:
    """Run-wide inputs to validation that are not part of the ledger."""
    roster: Roster
    plugins: PolicyPlugins = field(default_factory=PolicyPlugins)
    min_salt_bytes: int = 16
    require_bid_deposit: bool = False


def _platform(rule: Rule, detail: str = "") -> ValidationFailed:
    return ValidationFailed(Stage.PLATFORM, rule, detail)


def _check_chain(tx: TransactionEnvelope, view: "ChainState", ctx: ValidationContext):
    if tx.sender not in ctx.roster:
        raise ValidationFailed(Stage.CHAIN, Rule.UNKNOWN_SENDER, tx.sender)

    if not isinstance(tx.payload, PAYLOAD_TYPES[tx.kind]):
        raise ValidationFailed(Stage.CHAIN, Rule.MALFORMED, f"payload {type(tx.payload).__name__} for {tx.kind.value}")

    if tx.tx_id in view.tx_ids:
        raise ValidationFailed(Stage.CHAIN, Rule.DUPLICATE_TX, tx.short_id)

    if not tx.funds.empty and tx.kind not in FUNDED_KINDS:
        raise ValidationFailed(Stage.CHAIN, Rule.MALFORMED, f"funds attached to {tx.kind.value}")

    if tx.kind in PROPOSER_KINDS and not ctx.roster.has_role(tx.sender, Role.PROPOSER):
        raise ValidationFailed(Stage.CHAIN, Rule.NOT_PROPOSER, tx.sender)

    available = view.balances.get(tx.sender, 0)
    if available < tx.funds.total:
        raise InsufficientBalance(tx.sender, tx.funds.total, available)


def _ad_or_fail(view: "ChainState", ad_id: bytes):
    ad = view.ads.get(ad_id)
    if ad is None:
        raise _platform(Rule.UNKNOWN_ADVERTISEMENT, ad_id.hex()[:8])
    return ad


def _case_or_fail(view: "ChainState", ad_id: bytes):
    case = view.escrow.get(ad_id)
    if case is None:
        raise _platform(Rule.NO_ESCROW_CASE, ad_id.hex()[:8])
    return case


def _check_advertisement(tx, view, ctx: ValidationContext, number: int):
    ad: ItemAdvertisement = tx.payload

    if not ctx.roster.has_role(tx.sender, Role.SUPPLIER):
        raise _platform(Rule.NOT_SUPPLIER, tx.sender)

    violation = ad.violation()
    if violation is not None:
        raise _platform(violation, ad.label)

    for member in ad.committee or ():
        if not ctx.roster.has_role(member, Role.COMMITTEE):
            raise _platform(Rule.MISSING_COMMITTEE, f"{member} is not a committee node")

    if ad.physical:
        if ad.escrow is not None:
            configured = ctx.roster.has_role(ad.escrow, Role.ESCROW)
        else:
            configured = bool(ctx.roster.with_role(Role.ESCROW))
        if not configured:
            raise _platform(Rule.NO_ESCROW_CONFIGURED, ad.label)


def _check_bid(tx, view, ctx: ValidationContext, number: int):
    bid: BidPayload = tx.payload
    ad = _ad_or_fail(view, bid.ad_id)

    if not ctx.roster.has_role(tx.sender, Role.CONSUMER):
        raise _platform(Rule.NOT_CONSUMER, tx.sender)

    rule = validate_bid_for_trade(bid, tx.funds, ad, view.ad_bids(bid.ad_id), number,
                                  matched=bid.ad_id in view.outcomes,
                                  require_deposit=ctx.require_bid_deposit)
    if rule is not None:
        raise _platform(rule, f"{ad.ad.label} block {number}")


def _check_revelation(tx, view, ctx: ValidationContext, number: int):
    rev: RevelationPayload = tx.payload
    ad = _ad_or_fail(view, rev.ad_id)
    lifecycle = view.lifecycles[rev.ad_id]

    if not ad.ad.reveal_flag:
        raise _platform(Rule.NOT_A_REVEAL_TRADE, ad.ad.label)
    if tx.sender != ad.supplier:
        raise _platform(Rule.NOT_SUPPLIER, tx.sender)
    if not lifecycle.deadlines.sale_end < number <= lifecycle.deadlines.reveal_end:
        raise _platform(Rule.REVEAL_WINDOW_CLOSED, f"{ad.ad.label} block {number}")
    if len(rev.salt) < ctx.min_salt_bytes:
        raise _platform(Rule.SALT_TOO_SHORT, f"{len(rev.salt)} bytes")
    if not verify_reserve_price(rev, ad.ad, ctx.min_salt_bytes):
        raise _platform(Rule.HASH_MISMATCH, ad.ad.label)


def _check_evaluation(tx, view, ctx: ValidationContext, number: int):
    ev: EvaluationPayload = tx.payload
    ad = _ad_or_fail(view, ev.ad_id)
    terms = ad.ad

    if not terms.trade_type.uses_committee:
        raise _platform(Rule.NOT_A_COMMITTEE_TRADE, terms.label)
    if tx.sender not in terms.committee:
        raise _platform(Rule.NOT_IN_COMMITTEE, tx.sender)
    if not ad.block_number < number <= view.lifecycles[ev.ad_id].deadlines.eval_end:
        raise _platform(Rule.EVAL_WINDOW_CLOSED, f"{terms.label} block {number}")

    if terms.trade_type is TradeType.COMMITTEE_RANK:
        if not ev.is_decision or ev.bid_id is not None or ev.score is not None:
            raise _platform(Rule.WRONG_EVALUATION_FORM, "decision expected")
        target = ev.decision
    else:
        if ev.is_decision or ev.bid_id is None or not ev.score:
            raise _platform(Rule.WRONG_EVALUATION_FORM, "per-bid score expected")
        target = ev.bid_id

    bid = view.bids.get(target)
    if bid is None or bid.ad_id != ev.ad_id:
        raise _platform(Rule.UNKNOWN_BID, target.hex()[:8])

    if ev.score is not None:
        recorded = view.evaluations.get(ev.ad_id, ())
        # without a declared dimension the first recorded score fixes it
        dim = terms.score_dim
        if dim is None:
            dim = next((len(e.score) for e in recorded if e.score is not None), None)
        if dim is not None and len(ev.score) != dim:
            raise _platform(Rule.SCORE_DIMENSION_MISMATCH, f"{len(ev.score)} != {dim}")
        if any(e.sender == tx.sender and e.bid_id == ev.bid_id for e in recorded):
            raise _platform(Rule.DUPLICATE_EVALUATION, f"{tx.sender} on {ev.bid_id.hex()[:8]}")


def _check_outcome(tx, view, ctx: ValidationContext, number: int):
    payload = tx.payload
    ad = _ad_or_fail(view, payload.ad_id)

    if payload.ad_id in view.outcomes:
        raise _platform(Rule.DUPLICATE_OUTCOME, ad.ad.label)
    if not ad.block_number <= payload.trigger_block < number:
        raise ValidationFailed(Stage.PLATFORM, Rule.MALFORMED, f"trigger block {payload.trigger_block}")

    if tx.kind is not TxKind.ASSIGNMENT:
        return

    bid = view.bids.get(payload.winning_bid)
    if bid is None or bid.ad_id != payload.ad_id:
        raise _platform(Rule.UNKNOWN_BID, payload.winning_bid.hex()[:8])

    if ad.ad.physical:
        if payload.escrow is None or not ctx.roster.has_role(payload.escrow, Role.ESCROW):
            raise _platform(Rule.NO_ESCROW_CONFIGURED, ad.ad.label)
        if payload.safety_window is None or payload.safety_window <= 0:
            raise ValidationFailed(Stage.PLATFORM, Rule.MALFORMED, "safety window")
    elif payload.escrow is not None or payload.safety_window is not None:
        raise ValidationFailed(Stage.PLATFORM, Rule.MALFORMED, "escrow on an electronic trade")


def _check_funds(tx, view, ctx: ValidationContext, number: int):
    payload = tx.payload
    lock = view.locked.get(payload.lock_id)

    if lock is None:
        raise _platform(Rule.UNKNOWN_LOCK, payload.lock_id.hex()[:8])
    if lock.ad_id != payload.ad_id:
        raise ValidationFailed(Stage.PLATFORM, Rule.MALFORMED, "lock belongs to another trade")
    if payload.ad_id not in view.outcomes:
        raise _platform(Rule.NOT_MATCHED, payload.ad_id.hex()[:8])
    if lock.escrow is not None:
        raise _platform(Rule.LOCK_HELD_BY_ESCROW, lock.escrow)
    if lock.amount(payload.component) <= 0:
        raise _platform(Rule.UNKNOWN_LOCK, f"{payload.component.value} already released")
    if tx.kind is TxKind.FUNDS_TRANSFER and payload.recipient not in ctx.roster:
        raise ValidationFailed(Stage.PLATFORM, Rule.MALFORMED, f"recipient {payload.recipient}")


def _check_arbitration(tx, view, ctx, number):
    raise_arbitration(_case_or_fail(view, tx.payload.ad_id), tx.sender)


def _check_resolution(tx, view, ctx, number):
    resolve_dispute(_case_or_fail(view, tx.payload.ad_id), tx.sender, tx.payload.refundee)


def _check_release(tx, view, ctx, number):
    release_after_safety_window(_case_or_fail(view, tx.payload.ad_id), number)


def _check_delivery(tx, view, ctx, number):
    record_delivery(_case_or_fail(view, tx.payload.ad_id), tx.sender)


_PLATFORM_CHECKS: Dict[TxKind, Callable] = {
    TxKind.ADVERTISEMENT: _check_advertisement,
    TxKind.BID: _check_bid,
    TxKind.REVELATION: _check_revelation,
    TxKind.EVALUATION: _check_evaluation,
    TxKind.ASSIGNMENT: _check_outcome,
    TxKind.NO_ASSIGNMENT: _check_outcome,
    TxKind.FUNDS_UNLOCK: _check_funds,
    TxKind.FUNDS_TRANSFER: _check_funds,
    TxKind.ARBITRATION_REQUEST: _check_arbitration,
    TxKind.DISPUTE_RESOLUTION: _check_resolution,
    TxKind.ESCROW_RELEASE: _check_release,
    TxKind.DELIVERY_RECORD: _check_delivery,
}


def validate_tx(tx: TransactionEnvelope,
                view: "ChainState",
                ctx: ValidationContext,
                block_number: int):
    """Run the three validation stages. Returns normally iff the transaction is valid.

    :param tx: transaction to check
    :param view: ledger view the transaction would be applied to
    :param ctx: validation context
    :param block_number: number of the block that would include the transaction
    """
    _check_chain(tx, view, ctx)
    _PLATFORM_CHECKS[tx.kind](tx, view, ctx, block_number)

    if not ctx.plugins.accepts(tx, view):
        raise ValidationFailed(Stage.USE_CASE, Rule.CUSTOM_REJECTED, repr(tx))


def is_valid(tx: TransactionEnvelope, view: "ChainState", ctx: ValidationContext, block_number: int) -> bool:
    try:
        validate_tx(tx, view, ctx, block_number)
    except ValidationFailed:
        return False
    return True
