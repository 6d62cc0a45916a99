"""
Filename: chain_test.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Tests for transaction admission, the pending pool and block proposal.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import pytest
from blockmarket.chain.chain import SimChain
from blockmarket.chain.error import NotCurrentProposer, Rule, ValidationFailed
from blockmarket.chain.pool import TxPool
from blockmarket.chain.tx import TxKind
from blockmarket.market.types import Component, FundsUnlockPayload, NoAssignmentPayload

from ._market import ALLOCATION, bid, context, english, tx


@pytest.fixture
def ctx():
    return context()


@pytest.fixture
def chain(ctx):
    return SimChain(ctx, ALLOCATION)


# ---------------------------------------------------------------------------
# Pool
# ---------------------------------------------------------------------------

def test_pool_keeps_admission_order_and_ids():
    pool = TxPool()
    a, b = tx("alice", TxKind.BID, None), tx("bob", TxKind.BID, None)

    assert pool.admit(a) and pool.admit(b)
    assert not pool.admit(a)
    assert len(pool) == 2 and a.tx_id in pool

    assert pool.take_pending() == [a, b]
    assert a.tx_id not in pool and len(pool) == 0


def test_pool_requeue_goes_first():
    pool = TxPool()
    a, b, c = (tx("alice", TxKind.BID, None) for _ in range(3))
    pool.admit(c)
    pool.requeue([a, b])
    assert pool.take_pending() == [a, b, c]


def test_pool_carry_over():
    pool = TxPool()
    p = tx("p1", TxKind.NO_ASSIGNMENT, None)
    pool.defer([p])
    assert p.tx_id in pool
    assert pool.take_carry_over() == [p]
    assert pool.take_carry_over() == []


# ---------------------------------------------------------------------------
# Admission
# ---------------------------------------------------------------------------

def test_broadcast_validates_against_head(chain):
    ad = tx("seller", TxKind.ADVERTISEMENT, english())
    chain.broadcast_tx(ad)

    with pytest.raises(ValidationFailed, match="DuplicateTx"):
        chain.broadcast_tx(ad)

    # the advertisement is not on the ledger yet
    with pytest.raises(ValidationFailed, match="UnknownAdvertisement"):
        chain.broadcast_tx(bid(ad, "alice", 120))


def test_admission_does_not_lock_funds(chain):
    chain.broadcast_tx(tx("seller", TxKind.ADVERTISEMENT, english(), deposit=50))
    assert chain.state.balances["seller"] == 1_000
    chain.propose_next_block()
    assert chain.state.balances["seller"] == 950


# ---------------------------------------------------------------------------
# Proposal
# ---------------------------------------------------------------------------

def test_blocks_follow_round_robin(chain, ctx):
    numbers = [chain.propose_next_block() for _ in range(4)]
    assert [b.proposer for b in numbers] == [ctx.roster.proposer_for(n) for n in (1, 2, 3, 4)]
    assert chain.head.number == 4
    assert chain.idle


def test_stale_pending_tx_is_dropped(chain):
    ad = tx("seller", TxKind.ADVERTISEMENT, english())
    chain.broadcast_tx(ad)
    chain.propose_next_block()

    first, second = bid(ad, "alice", 120), bid(ad, "bob", 125)
    chain.broadcast_tx(first)
    chain.broadcast_tx(second)
    block = chain.propose_next_block()

    assert block.txs == (first,)
    assert [(t, e.rule) for t, e in chain.last_drops] == [(second, Rule.INCREMENT_VIOLATION)]
    assert chain.state.balances["bob"] == 2_000


def test_only_next_proposer_adds_proposer_txs(chain):
    assert chain.next_proposer == "p2"
    t = tx("p1", TxKind.NO_ASSIGNMENT, NoAssignmentPayload(b"x" * 32, 0))
    with pytest.raises(NotCurrentProposer, match="expected: p2"):
        chain.add_tx_to_prop_block("p1", t)


def test_user_kinds_cannot_be_added_as_proposer_txs(chain):
    with pytest.raises(ValueError, match="not proposer-created"):
        chain.add_tx_to_prop_block("p2", tx("p2", TxKind.BID, None))


def test_invalid_proposer_tx_is_an_assertion(chain):
    chain.add_tx_to_prop_block("p2", tx("p2", TxKind.FUNDS_UNLOCK,
                                        FundsUnlockPayload(b"x" * 32, Component.PAYMENT, b"x" * 32)))
    with pytest.raises(AssertionError, match="failed validation"):
        chain.propose_next_block()


# ---------------------------------------------------------------------------
# Block size cap
# ---------------------------------------------------------------------------

def test_cap_requeues_user_txs(ctx):
    chain = SimChain(ctx, ALLOCATION, block_tx_cap=2)
    ads = [tx("seller", TxKind.ADVERTISEMENT, english(label=f"lot{i}")) for i in range(3)]
    for ad in ads:
        chain.broadcast_tx(ad)

    assert chain.propose_next_block().txs == tuple(ads[:2])
    assert chain.propose_next_block().txs == (ads[2],)


def test_cap_carries_proposer_txs_over(ctx):
    chain = SimChain(ctx, ALLOCATION, block_tx_cap=2)
    ad = tx("seller", TxKind.ADVERTISEMENT, english(sale=2), deposit=50)
    chain.broadcast_tx(ad)
    chain.propose_next_block()

    b1, b2 = bid(ad, "alice", 120), bid(ad, "bob", 130)
    chain.broadcast_tx(b1)
    chain.broadcast_tx(b2)
    chain.propose_next_block()

    proposer = chain.next_proposer
    settle = [
        tx(proposer, TxKind.NO_ASSIGNMENT, NoAssignmentPayload(ad.tx_id, 2)),
        tx(proposer, TxKind.FUNDS_UNLOCK, FundsUnlockPayload(ad.tx_id, Component.DEPOSIT, ad.tx_id)),
        tx(proposer, TxKind.FUNDS_UNLOCK, FundsUnlockPayload(b1.tx_id, Component.PAYMENT, ad.tx_id)),
        tx(proposer, TxKind.FUNDS_UNLOCK, FundsUnlockPayload(b2.tx_id, Component.PAYMENT, ad.tx_id)),
    ]
    for t in settle:
        chain.add_tx_to_prop_block(proposer, t)

    late = tx("seller", TxKind.ADVERTISEMENT, english(label="late"))
    chain.broadcast_tx(late)

    assert chain.propose_next_block().txs == tuple(settle[:2])
    assert chain.propose_next_block().txs == tuple(settle[2:])
    assert chain.propose_next_block().txs == (late,)

    state = chain.state
    assert state.total() == state.genesis_total
    assert not state.locked
    assert (state.balances["alice"], state.balances["bob"], state.balances["seller"]) == (2_000, 2_000, 1_000)
