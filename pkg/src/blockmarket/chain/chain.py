"""
Filename: chain.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    The simulated blockchain: admission of user transactions, the current
    proposer's outstanding list and round-robin block proposal.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import logging

from typing import List, Mapping, Optional, Tuple

from .block import Block
from .error import NotCurrentProposer, Rule, Stage, ValidationFailed
from .pool import TxPool
from .state import ChainState, apply_tx, close_block
from .tx import TransactionEnvelope
from .validation import ValidationContext, validate_tx

logger = logging.getLogger(__name__)

Drop = Tuple[TransactionEnvelope, ValidationFailed]


class SimChain:
    """Deterministic single-copy chain. Nodes keep their own replicas and
    fold the blocks it proposes.
    """

    def __init__(self,
                 ctx: ValidationContext,
                 allocation: Mapping[str, int],
                 block_tx_cap: Optional[int] = None):
        self.ctx = ctx
        self.state = ChainState.genesis(ctx.roster, allocation)
        self.pool = TxPool()
        self.outstanding: List[TransactionEnvelope] = []
        self.block_tx_cap = block_tx_cap or None
        self.last_drops: List[Drop] = []

    @property
    def head(self) -> Block:
        return self.state.blocks[-1]

    @property
    def blocks(self) -> Tuple[Block, ...]:
        return self.state.blocks

    @property
    def next_proposer(self) -> str:
        return self.ctx.roster.proposer_for(self.state.number + 1)

    @property
    def idle(self) -> bool:
        return not self.pool and not self.outstanding

    def broadcast_tx(self, tx: TransactionEnvelope) -> TransactionEnvelope:
        """Admit a user transaction to the pending pool. Funds are not locked
        until the transaction's block is applied.

        :param tx: user transaction
        :return: the admitted transaction
        """
        if tx.tx_id in self.pool:
            raise ValidationFailed(Stage.CHAIN, Rule.DUPLICATE_TX, tx.short_id)

        validate_tx(tx, self.state, self.ctx, self.state.number + 1)
        self.pool.admit(tx)
        logger.debug("admitted %r", tx)

        return tx

    def add_tx_to_prop_block(self, caller: str, tx: TransactionEnvelope):
        """Queue a proposer-created transaction for the next block.

        :param caller: identity adding the transaction
        :param tx: Assignment, NoAssignment, FundsUnlock, FundsTransfer or EscrowRelease
        """
        if caller != self.next_proposer:
            raise NotCurrentProposer(caller, self.next_proposer)
        if not tx.proposer_created:
            raise ValueError(f"add_tx_to_prop_block: {tx.kind.value} is not proposer-created")

        self.outstanding.append(tx)

    def propose_next_block(self) -> Block:
        """Build, apply and return the next block: carried-over transactions,
        this tick's proposer transactions, then pending user transactions,
        subject to the block size cap.

        :return: the new head block
        """
        number = self.state.number + 1
        work = self.state.fork()
        included: List[TransactionEnvelope] = []
        cap = self.block_tx_cap

        proposer_txs = self.pool.take_carry_over() + self.outstanding
        self.outstanding = []
        deferred = []

        for tx in proposer_txs:
            if cap is not None and len(included) >= cap:
                deferred.append(tx)
                continue
            try:
                apply_tx(work, tx, self.ctx, number, len(included))
            except ValidationFailed as e:
                raise AssertionError(f"proposer transaction {tx!r} failed validation: {e.message}")
            included.append(tx)

        self.pool.defer(deferred)

        self.last_drops = []
        waiting = []
        for tx in self.pool.take_pending():
            if cap is not None and len(included) >= cap:
                waiting.append(tx)
                continue
            try:
                apply_tx(work, tx, self.ctx, number, len(included))
            except ValidationFailed as e:
                logger.info("dropped %r: %s", tx, e.reason)
                self.last_drops.append((tx, e))
                continue
            included.append(tx)

        self.pool.requeue(waiting)

        block = Block.build(number, self.state.head, self.next_proposer, included)
        close_block(work, block)
        self.state = work

        logger.debug("block %d by %s with %d txs", number, block.proposer, len(included))

        return block
