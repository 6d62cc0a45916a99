"""
Filename: state.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    The replayable ledger. ChainState is a fold of block application over
    the blocks of the chain, starting from a genesis allocation. Applying a
    block returns a new state and leaves its input untouched.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Mapping, Optional, Set, Tuple

from ..escrow.actions import raise_arbitration, record_delivery, release_after_safety_window, resolve_dispute
from ..escrow.case import EscrowCase, open_escrow
from ..market.lifecycle import Phase, TradeLifecycle, derived_deadlines
from ..market.types import (
    AdRecord,
    BidRecord,
    Component,
    EvaluationRecord,
    OutcomeRecord,
    RevelationRecord,
)
from .block import Block, genesis
from .codec import digest, encode
from .error import InvalidBlock, ValidationFailed
from .tx import Roster, TransactionEnvelope, TxKind
from .validation import ValidationContext, validate_tx


@dataclass(frozen=True)
class Lock:
    """Funds locked by one transaction. `escrow` names the escrow holding it, if any."""
    owner: str
    payment: int
    deposit: int
    ad_id: bytes
    escrow: Optional[str] = None

    def amount(self, component: Component) -> int:
        return self.payment if component is Component.PAYMENT else self.deposit

    def without(self, component: Component) -> "Lock":
        if component is Component.PAYMENT:
            return replace(self, payment=0)
        return replace(self, deposit=0)

    @property
    def total(self) -> int:
        return self.payment + self.deposit


@dataclass
class ChainState:
    """Account ledger and marketplace indexes after the block numbered `number`.

    Treat instances as values: block application works on a fork.
    """
    number: int
    head: bytes
    genesis_total: int
    blocks: Tuple[Block, ...]
    balances: Dict[str, int]
    locked: Dict[bytes, Lock] = field(default_factory=dict)
    ads: Dict[bytes, AdRecord] = field(default_factory=dict)
    labels: Dict[str, bytes] = field(default_factory=dict)
    bids: Dict[bytes, BidRecord] = field(default_factory=dict)
    bids_by_ad: Dict[bytes, Tuple[bytes, ...]] = field(default_factory=dict)
    bid_labels: Dict[Tuple[bytes, str], bytes] = field(default_factory=dict)
    revelations: Dict[bytes, Tuple[RevelationRecord, ...]] = field(default_factory=dict)
    evaluations: Dict[bytes, Tuple[EvaluationRecord, ...]] = field(default_factory=dict)
    outcomes: Dict[bytes, OutcomeRecord] = field(default_factory=dict)
    escrow: Dict[bytes, EscrowCase] = field(default_factory=dict)
    lifecycles: Dict[bytes, TradeLifecycle] = field(default_factory=dict)
    tx_ids: Set[bytes] = field(default_factory=set)

    @classmethod
    def genesis(cls, roster: Roster, allocation: Mapping[str, int]) -> "ChainState":
        """State after the fixed genesis block.

        :param roster: node roster
        :param allocation: identity -> genesis balance; missing identities start at 0
        :return: the genesis state
        """
        balances = {i.id: int(allocation.get(i.id, 0)) for i in roster}
        if any(v < 0 for v in balances.values()):
            raise ValueError("ChainState.genesis: negative genesis balance")

        block = genesis(roster)
        return cls(0, block.digest, sum(balances.values()), (block,), balances)

    def fork(self) -> "ChainState":
        return ChainState(
            number=self.number,
            head=self.head,
            genesis_total=self.genesis_total,
            blocks=self.blocks,
            balances=dict(self.balances),
            locked=dict(self.locked),
            ads=dict(self.ads),
            labels=dict(self.labels),
            bids=dict(self.bids),
            bids_by_ad=dict(self.bids_by_ad),
            bid_labels=dict(self.bid_labels),
            revelations=dict(self.revelations),
            evaluations=dict(self.evaluations),
            outcomes=dict(self.outcomes),
            escrow=dict(self.escrow),
            lifecycles=dict(self.lifecycles),
            tx_ids=set(self.tx_ids),
        )

    def total(self) -> int:
        """Sum of balances and locked amounts."""
        return sum(self.balances.values()) + sum(lock.total for lock in self.locked.values())

    def fingerprint(self) -> bytes:
        """Digest over the ledger content; equal states have equal fingerprints."""
        return digest(encode((
            self.number,
            self.head,
            tuple(sorted(self.balances.items())),
            tuple(sorted(self.locked.items(), key=lambda kv: kv[0])),
            tuple(sorted(self.outcomes.items(), key=lambda kv: kv[0])),
            tuple(sorted(self.escrow.items(), key=lambda kv: kv[0])),
            tuple(sorted(self.lifecycles.items(), key=lambda kv: kv[0])),
        )))

    def ad_bids(self, ad_id: bytes) -> List[BidRecord]:
        """Bids of an advertisement in inclusion order."""
        return [self.bids[b] for b in self.bids_by_ad.get(ad_id, ())]

    def ad_by_label(self, label: str) -> Optional[AdRecord]:
        ad_id = self.labels.get(label)
        return self.ads.get(ad_id) if ad_id is not None else None

    def bid_by_label(self, ad_id: bytes, label: str) -> Optional[BidRecord]:
        bid_id = self.bid_labels.get((ad_id, label))
        return self.bids.get(bid_id) if bid_id is not None else None

    def locks_for(self, ad_id: bytes) -> Dict[bytes, Lock]:
        return {k: v for k, v in self.locked.items() if v.ad_id == ad_id}


def _move(state: ChainState, lock_id: bytes, component: Component, recipient: str):
    lock = state.locked[lock_id]
    state.balances[recipient] = state.balances.get(recipient, 0) + lock.amount(component)
    lock = lock.without(component)

    if lock.total == 0:
        del state.locked[lock_id]
    else:
        state.locked[lock_id] = lock


def _advance(state: ChainState, ad_id: bytes, phase: Phase, winning_bid: Optional[bytes] = None):
    state.lifecycles[ad_id] = state.lifecycles[ad_id].advance(phase, winning_bid)


def apply_tx(state: ChainState,
             tx: TransactionEnvelope,
             ctx: ValidationContext,
             block_number: int,
             index: int):
    """Validate one transaction against `state` and apply it in place.

    :param state: working fork of the ledger
    :param tx: transaction
    :param ctx: validation context
    :param block_number: number of the block being applied
    :param index: position of the transaction in the block
    """
    validate_tx(tx, state, ctx, block_number)

    inclusion = (block_number, index)
    payload = tx.payload
    state.tx_ids.add(tx.tx_id)

    if not tx.funds.empty:
        ad_id = tx.tx_id if tx.kind is TxKind.ADVERTISEMENT else payload.ad_id
        state.balances[tx.sender] -= tx.funds.total
        state.locked[tx.tx_id] = Lock(tx.sender, tx.funds.payment or 0, tx.funds.deposit or 0, ad_id)

    if tx.kind is TxKind.ADVERTISEMENT:
        state.ads[tx.tx_id] = AdRecord(tx.tx_id, payload, tx.sender, block_number,
                                       tx.funds.payment, tx.funds.deposit)
        state.labels.setdefault(payload.label, tx.tx_id)
        state.lifecycles[tx.tx_id] = TradeLifecycle(tx.tx_id, Phase.BIDDING,
                                                    derived_deadlines(payload, block_number))

    elif tx.kind is TxKind.BID:
        state.bids[tx.tx_id] = BidRecord(tx.tx_id, payload.ad_id, tx.sender, payload.content,
                                         tx.funds.payment, tx.funds.deposit, inclusion, payload.label)
        state.bids_by_ad[payload.ad_id] = state.bids_by_ad.get(payload.ad_id, ()) + (tx.tx_id,)
        if payload.label:
            state.bid_labels.setdefault((payload.ad_id, payload.label), tx.tx_id)

    elif tx.kind is TxKind.REVELATION:
        record = RevelationRecord(tx.tx_id, payload.ad_id, payload.res_price, payload.salt, inclusion)
        state.revelations[payload.ad_id] = state.revelations.get(payload.ad_id, ()) + (record,)

    elif tx.kind is TxKind.EVALUATION:
        record = EvaluationRecord(tx.tx_id, payload.ad_id, tx.sender, payload.decision,
                                  payload.bid_id, payload.score, inclusion)
        state.evaluations[payload.ad_id] = state.evaluations.get(payload.ad_id, ()) + (record,)

    elif tx.kind is TxKind.ASSIGNMENT:
        state.outcomes[payload.ad_id] = OutcomeRecord(tx.tx_id, payload.ad_id, True, payload.winning_bid,
                                                      payload.trigger_block, block_number)
        _advance(state, payload.ad_id, Phase.ASSIGNED, payload.winning_bid)

        ad = state.ads[payload.ad_id]
        if ad.ad.physical:
            case = open_escrow(payload, ad, state.bids[payload.winning_bid], block_number)
            state.escrow[payload.ad_id] = case
            for lock_id in case.lock_ids:
                state.locked[lock_id] = replace(state.locked[lock_id], escrow=case.escrow_id)
            _advance(state, payload.ad_id, Phase.ESCROW_OPEN)

    elif tx.kind is TxKind.NO_ASSIGNMENT:
        state.outcomes[payload.ad_id] = OutcomeRecord(tx.tx_id, payload.ad_id, False, None,
                                                      payload.trigger_block, block_number)
        _advance(state, payload.ad_id, Phase.NO_ASSIGNMENT)

    elif tx.kind is TxKind.FUNDS_UNLOCK:
        _move(state, payload.lock_id, payload.component, state.locked[payload.lock_id].owner)

    elif tx.kind is TxKind.FUNDS_TRANSFER:
        _move(state, payload.lock_id, payload.component, payload.recipient)

    elif tx.kind is TxKind.ARBITRATION_REQUEST:
        state.escrow[payload.ad_id] = raise_arbitration(state.escrow[payload.ad_id], tx.sender)
        _advance(state, payload.ad_id, Phase.DISPUTED)

    elif tx.kind is TxKind.DELIVERY_RECORD:
        state.escrow[payload.ad_id] = record_delivery(state.escrow[payload.ad_id], tx.sender)

    elif tx.kind in (TxKind.DISPUTE_RESOLUTION, TxKind.ESCROW_RELEASE):
        case = state.escrow[payload.ad_id]
        if tx.kind is TxKind.DISPUTE_RESOLUTION:
            case, moves = resolve_dispute(case, tx.sender, payload.refundee)
        else:
            case, moves = release_after_safety_window(case, block_number)

        for lock_id in case.lock_ids:
            state.locked[lock_id] = replace(state.locked[lock_id], escrow=None)
        for lock_id, component, recipient in moves:
            _move(state, lock_id, component, recipient)

        state.escrow[payload.ad_id] = case
        _advance(state, payload.ad_id, Phase.SETTLED)


def close_block(state: ChainState, block: Block):
    """Bookkeeping after the last transaction of a block: head, phase
    changes at sale end and settlement of trades whose locks are gone.
    """
    state.number = block.number
    state.head = block.digest
    state.blocks = state.blocks + (block,)

    locked_ads = {lock.ad_id for lock in state.locked.values()}

    for ad_id, lifecycle in list(state.lifecycles.items()):
        if lifecycle.phase is Phase.BIDDING and lifecycle.deadlines.sale_end == block.number:
            if lifecycle.deadlines.reveal_end is not None:
                state.lifecycles[ad_id] = lifecycle.advance(Phase.AWAIT_REVEAL)
            elif lifecycle.deadlines.eval_end is not None:
                state.lifecycles[ad_id] = lifecycle.advance(Phase.AWAIT_EVAL)
        elif lifecycle.phase in (Phase.ASSIGNED, Phase.NO_ASSIGNMENT) and ad_id not in locked_ads:
            state.lifecycles[ad_id] = lifecycle.advance(Phase.SETTLED)


def check_header(block: Block, state: ChainState, roster: Roster):
    if block.number != state.number + 1:
        raise InvalidBlock(block.number, f"does not extend head {state.number}")
    if block.parent_digest != state.head:
        raise InvalidBlock(block.number, "parent digest mismatch")
    if not block.verify_digest():
        raise InvalidBlock(block.number, "digest mismatch")
    if block.proposer != roster.proposer_for(block.number):
        raise InvalidBlock(block.number, f"proposer {block.proposer} out of turn")


def apply_block(block: Block, state: ChainState, ctx: ValidationContext) -> ChainState:
    """Validate and apply a block.

    :param block: block extending the head of `state`
    :param state: pre-block state, not modified
    :param ctx: validation context
    :return: the post-block state
    """
    check_header(block, state, ctx.roster)

    nxt = state.fork()
    for index, tx in enumerate(block.txs):
        try:
            apply_tx(nxt, tx, ctx, block.number, index)
        except ValidationFailed as e:
            raise InvalidBlock(block.number, f"tx {index} ({tx!r}): {e.message}")

    close_block(nxt, block)

    return nxt


def validate_block(block: Block, state: ChainState, ctx: ValidationContext) -> bool:
    """Re-validate every transaction of a block against its pre-transaction state.

    :return: True iff the block can be applied
    """
    try:
        apply_block(block, state, ctx)
    except InvalidBlock:
        return False
    return True


def replay(blocks: Iterable[Block], ctx: ValidationContext, allocation: Mapping[str, int]) -> ChainState:
    """Fold a block sequence from genesis. Block 0, if present, must be the fixed genesis.

    :param blocks: blocks in order
    :param ctx: validation context
    :param allocation: genesis allocation
    :return: the final state
    """
    state = ChainState.genesis(ctx.roster, allocation)

    for block in blocks:
        if block.number == 0:
            if block.digest != state.head:
                raise InvalidBlock(0, "genesis mismatch")
            continue
        state = apply_block(block, state, ctx)

    return state
