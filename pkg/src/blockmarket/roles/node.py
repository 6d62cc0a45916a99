"""
Filename: node.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    A marketplace node: its ledger replica, its user-request handlers and
    the block handlers of the roles it plays. On every new block the node
    validates and applies it, then runs the proposer, supplier and consumer
    handlers in that order. Handlers return effects; the engine publishes
    them.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import logging
import numpy as np

from dataclasses import dataclass, field
from typing import List, Mapping, Optional, Tuple

from ..chain.block import Block
from ..chain.error import InvalidBlock
from ..chain.state import ChainState, apply_block
from ..chain.tx import FundsAttachment, Identity, Role, TransactionEnvelope, TxKind
from ..chain.validation import ValidationContext
from ..defaults import Market
from ..market.types import (
    AdRecord,
    AssignmentPayload,
    BidRecord,
    Component,
    EscrowReleasePayload,
    NoAssignmentPayload,
    RevelationPayload,
    TradeType,
)
from ..policy.prf import SeedMaterial
from ..policy.rules import dutch_exhausted, dutch_price_for
from ..policy.selection import select_winning_bid
from .events import NotificationEvent, NotificationKind
from .money import resolve_money_flow
from .tracker import Expiration, ExpirationTracker
from .user import HANDLERS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NodeProfile:
    """Per-node scenario settings."""
    interest: Tuple[str, ...] = ()
    withhold_reveal: bool = False


@dataclass
class Effects:
    """Output of one node for one block."""
    user_txs: List[TransactionEnvelope] = field(default_factory=list)
    proposer_txs: List[TransactionEnvelope] = field(default_factory=list)
    notifications: List[NotificationEvent] = field(default_factory=list)
    invalid: Optional[InvalidBlock] = None


@dataclass(frozen=True)
class Decision:
    """Matching outcome computed by a proposer for one trade."""
    ad: AdRecord
    winner: Optional[BidRecord]
    revealed: bool
    trigger_block: int


class Node:

    def __init__(self,
                 identity: Identity,
                 index: int,
                 ctx: ValidationContext,
                 allocation: Mapping[str, int],
                 seed: int,
                 profile: Optional[NodeProfile] = None,
                 safety_window: int = Market.safety_window):
        self.identity = identity
        self.id = identity.id
        self.ctx = ctx
        self.profile = profile or NodeProfile()
        self.safety_window = safety_window
        self.state = ChainState.genesis(ctx.roster, allocation)
        self.tracker = ExpirationTracker()
        # advertisement id -> (reserve price, salt)
        self.reserves = {}
        self.__nonce = 0
        self.__rng = np.random.default_rng([seed, index])

    def __repr__(self):
        return f"Node({self.id})"

    def next_nonce(self) -> int:
        self.__nonce += 1
        return self.__nonce

    def draw_salt(self) -> bytes:
        return self.__rng.bytes(self.ctx.min_salt_bytes)

    def make_tx(self, kind: TxKind, payload, funds: Optional[FundsAttachment] = None) -> TransactionEnvelope:
        return TransactionEnvelope.create(self.id, kind, payload, funds, self.next_nonce())

    def submit(self, request) -> TransactionEnvelope:
        """Turn a user request into a transaction, resolving labels against this node's ledger.

        :param request: one of the request records of `roles.user`
        :return: transaction to broadcast
        """
        return HANDLERS[type(request)](self, request)

    def process_block(self, block: Block) -> Effects:
        """Apply a new block to the local ledger and run the role handlers.

        :param block: block extending the local head
        :return: transactions and notifications produced by this node
        """
        before = self.state
        try:
            self.state = apply_block(block, before, self.ctx)
        except InvalidBlock as e:
            logger.warning("%s ignored block %d: %s", self.id, block.number, e.message)
            return Effects(invalid=e)

        effects = Effects()

        if self.identity.has(Role.PROPOSER):
            self.process_block_by_proposer(block, effects)
        if self.identity.has(Role.SUPPLIER):
            self.process_block_by_supplier(block, effects)
        if self.identity.has(Role.CONSUMER):
            self.process_block_by_consumer(block, before, effects)

        return effects

    # ------------------------------------------------------------------
    # Block proposer
    # ------------------------------------------------------------------

    def process_block_by_proposer(self, block: Block, effects: Effects):
        state = self.state
        fired = self.tracker.tick()

        for tx in block.txs:
            if tx.kind is TxKind.ADVERTISEMENT:
                self.__track(tx.tx_id, block.number)
            elif tx.kind is TxKind.ASSIGNMENT and tx.payload.ad_id in state.escrow:
                case = state.escrow[tx.payload.ad_id]
                if self.tracker.register(case.ad_id, Expiration.RELEASE, case.safety_window - 1):
                    fired.append((case.ad_id, Expiration.RELEASE))
            elif tx.kind is TxKind.ARBITRATION_REQUEST:
                self.tracker.cancel(tx.payload.ad_id, Expiration.RELEASE)

        emit = self.ctx.roster.proposer_for(block.number + 1) == self.id
        decided = set()

        for ad_id, kind in fired:
            if kind is Expiration.RELEASE:
                case = state.escrow.get(ad_id)
                if emit and case is not None and case.state.releasable:
                    effects.proposer_txs.append(self.make_tx(TxKind.ESCROW_RELEASE, EscrowReleasePayload(ad_id)))
                continue

            if ad_id in decided or ad_id in state.outcomes:
                continue

            ad = state.ads[ad_id]

            # outcomes of revealed or evaluated trades wait for the later deadline
            if kind is Expiration.SALE and (ad.ad.reveal_flag or ad.ad.committee):
                continue

            if kind is Expiration.WINDOW and not self.__dutch_boundary(ad, block):
                continue

            decision = self.decide(ad, block)
            decided.add(ad_id)
            self.tracker.cancel(ad_id)

            logger.info("%s matched %s at block %d: %s", self.id, ad.ad.label, block.number,
                        decision.winner.label or decision.winner.bid_id.hex()[:8]
                        if decision.winner is not None else "no assignment")

            if emit:
                effects.proposer_txs.extend(self.emit_outcome(decision))

    def __track(self, ad_id: bytes, number: int):
        ad = self.state.ads[ad_id]
        deadlines = self.state.lifecycles[ad_id].deadlines

        self.tracker.register(ad_id, Expiration.SALE, deadlines.sale_end - number)
        if deadlines.reveal_end is not None:
            self.tracker.register(ad_id, Expiration.REVEAL, deadlines.reveal_end - number)
        if deadlines.eval_end is not None:
            self.tracker.register(ad_id, Expiration.EVAL, deadlines.eval_end - number)
        # a Dutch trade with a secret reserve is matched once the reveal window closes
        if (ad.ad.trade_type is TradeType.DUTCH and not ad.ad.reveal_flag
                and ad.ad.bid_duration < ad.ad.sale_duration):
            self.tracker.register(ad_id, Expiration.WINDOW, ad.ad.bid_duration)

    def __dutch_boundary(self, ad: AdRecord, block: Block) -> bool:
        """Window boundary of a Dutch trade. True when the trade is to be
        matched now: the closing window holds bids or the schedule is exhausted.
        """
        if any(b.inclusion[0] < block.number for b in self.state.ad_bids(ad.ad_id)):
            return True

        if dutch_exhausted(ad.ad, dutch_price_for(ad, block.number)):
            return True

        if block.number + ad.ad.bid_duration < self.state.lifecycles[ad.ad_id].deadlines.sale_end:
            self.tracker.register(ad.ad_id, Expiration.WINDOW, ad.ad.bid_duration)

        return False

    def decide(self, ad: AdRecord, block: Block) -> Decision:
        """Select the winner of a trade whose matching fired at `block`.

        :param ad: advertisement record
        :param block: trigger block; its digest seeds the tie-break
        :return: the decision
        """
        state = self.state
        winner = select_winning_bid(ad,
                                    state.ad_bids(ad.ad_id),
                                    state.evaluations.get(ad.ad_id, ()),
                                    SeedMaterial(block.digest, ad.ad_id),
                                    self.ctx.plugins)
        revealed = True

        if ad.ad.reveal_flag:
            revelations = state.revelations.get(ad.ad_id, ())
            revealed = bool(revelations)
            if winner is None or not revealed or winner.price < revelations[0].res_price:
                winner = None

        return Decision(ad, winner, revealed, block.number)

    def emit_outcome(self, decision: Decision) -> List[TransactionEnvelope]:
        """Assignment or NoAssignment followed by the money flow transactions."""
        ad = decision.ad
        winner = decision.winner
        escrowed = ad.ad.physical and winner is not None

        if winner is not None:
            payload = AssignmentPayload(
                ad.ad_id, winner.bid_id, decision.trigger_block,
                escrow=self.__escrow_for(ad) if escrowed else None,
                safety_window=(ad.ad.safety_window or self.safety_window) if escrowed else None,
            )
            txs = [self.make_tx(TxKind.ASSIGNMENT, payload)]
        else:
            txs = [self.make_tx(TxKind.NO_ASSIGNMENT, NoAssignmentPayload(ad.ad_id, decision.trigger_block))]

        # a forfeited deposit goes to the proposer of the trigger block
        trigger_proposer = self.ctx.roster.proposer_for(decision.trigger_block)
        moves = resolve_money_flow(ad, self.state.ad_bids(ad.ad_id), winner, decision.revealed,
                                   trigger_proposer, escrowed)
        txs.extend(self.make_tx(kind, payload) for kind, payload in moves)

        return txs

    def __escrow_for(self, ad: AdRecord) -> str:
        if ad.ad.escrow is not None:
            return ad.ad.escrow
        return self.ctx.roster.with_role(Role.ESCROW)[0].id

    # ------------------------------------------------------------------
    # Supplier
    # ------------------------------------------------------------------

    def process_block_by_supplier(self, block: Block, effects: Effects):
        state = self.state

        for tx in block.txs:
            ad = state.ads.get(getattr(tx.payload, "ad_id", b""))
            if ad is None or ad.supplier != self.id:
                continue
            notice = self.__outcome_notice(tx, ad)
            if notice is not None:
                effects.notifications.append(notice)

        for ad_id, (price, salt) in self.reserves.items():
            lifecycle = state.lifecycles.get(ad_id)
            if lifecycle is None or lifecycle.deadlines.sale_end != block.number:
                continue
            if self.profile.withhold_reveal:
                logger.info("%s withholds the reserve of %s", self.id, state.ads[ad_id].ad.label)
                continue
            effects.user_txs.append(self.make_tx(TxKind.REVELATION, RevelationPayload(ad_id, price, salt)))

    def __outcome_notice(self, tx: TransactionEnvelope, ad: AdRecord) -> Optional[NotificationEvent]:
        if tx.kind is TxKind.ASSIGNMENT:
            winner = self.state.bids[tx.payload.winning_bid]
            return NotificationEvent(self.id, NotificationKind.ITEM_ASSIGNED, ad.ad.label,
                                     winner.label or winner.bid_id.hex()[:8])
        if tx.kind is TxKind.NO_ASSIGNMENT:
            return NotificationEvent(self.id, NotificationKind.NO_ASSIGNMENT, ad.ad.label)
        if tx.kind is TxKind.DISPUTE_RESOLUTION:
            return NotificationEvent(self.id, NotificationKind.DISPUTE_RESOLVED, ad.ad.label, tx.payload.refundee)
        return None

    # ------------------------------------------------------------------
    # Consumer
    # ------------------------------------------------------------------

    def process_block_by_consumer(self, block: Block, before: ChainState, effects: Effects):
        state = self.state
        notices = effects.notifications

        for tx in block.txs:
            if tx.kind is TxKind.FUNDS_UNLOCK and tx.payload.component is Component.DEPOSIT:
                lock = before.locked.get(tx.payload.lock_id)
                if lock is not None and lock.owner == self.id:
                    notices.append(NotificationEvent(self.id, NotificationKind.DEPOSIT_RETURNED,
                                                     state.ads[tx.payload.ad_id].ad.label, lock.deposit))
            elif tx.kind is TxKind.DISPUTE_RESOLUTION:
                case = state.escrow[tx.payload.ad_id]
                if case.winner == self.id:
                    notices.append(self.__outcome_notice(tx, state.ads[case.ad_id]))

        for label in self.profile.interest:
            ad = state.ad_by_label(label)
            if ad is None:
                continue

            outcome = next((tx for tx in block.txs
                            if tx.kind in (TxKind.ASSIGNMENT, TxKind.NO_ASSIGNMENT)
                            and tx.payload.ad_id == ad.ad_id), None)
            if outcome is not None:
                notices.append(self.__outcome_notice(outcome, ad))
                continue

            deadlines = state.lifecycles[ad.ad_id].deadlines
            if ad.ad_id in state.outcomes or not ad.block_number < block.number < deadlines.sale_end:
                continue

            bids = [state.bids[tx.tx_id] for tx in block.txs
                    if tx.kind is TxKind.BID and tx.payload.ad_id == ad.ad_id]
            trade_type = ad.ad.trade_type

            if trade_type is TradeType.ENGLISH and bids:
                notices.append(NotificationEvent(self.id, NotificationKind.NEW_HIGHEST_BID, label,
                                                 max(b.price for b in bids)))
            elif trade_type is TradeType.DUTCH and bids:
                notices.append(NotificationEvent(self.id, NotificationKind.DUTCH_BID_SEEN, label, bids[0].price))
            elif trade_type is TradeType.DUTCH and not state.bids_by_ad.get(ad.ad_id):
                if (block.number - ad.block_number) % ad.ad.bid_duration == 0:
                    price = dutch_price_for(ad, block.number)
                    if not dutch_exhausted(ad.ad, price):
                        notices.append(NotificationEvent(self.id, NotificationKind.DUTCH_PRICE_LOWERED,
                                                         label, price))
