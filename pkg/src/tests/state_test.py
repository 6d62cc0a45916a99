"""
Filename: state_test.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Tests for the replayable ledger: locking, block application, header
    checks and replay.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import pytest
from blockmarket.chain.block import Block
from blockmarket.chain.error import InvalidBlock
from blockmarket.chain.state import ChainState, apply_block, replay, validate_block
from blockmarket.chain.tx import TxKind
from blockmarket.market.commit import commit_reserve_price
from blockmarket.market.lifecycle import Phase

from ._market import ALLOCATION, advance_to, bid, block_for, context, english, extend, genesis, tx


@pytest.fixture
def ctx():
    return context()


@pytest.fixture
def listed(ctx):
    """State after block 1 holding an English advertisement with a 50-unit deposit."""
    ad = tx("seller", TxKind.ADVERTISEMENT, english(), deposit=50)
    return ad, extend(genesis(ctx), ctx, ad)


# ---------------------------------------------------------------------------
# Genesis
# ---------------------------------------------------------------------------

def test_genesis_balances(ctx):
    state = genesis(ctx)
    assert state.number == 0
    assert state.balances["alice"] == 2_000
    assert state.balances["p1"] == 0
    assert state.genesis_total == sum(ALLOCATION.values())


def test_genesis_rejects_negative_balance(ctx):
    with pytest.raises(ValueError, match="negative"):
        ChainState.genesis(ctx.roster, {"alice": -1})


# ---------------------------------------------------------------------------
# Locking and conservation
# ---------------------------------------------------------------------------

def test_advertisement_locks_deposit(listed):
    ad, state = listed
    assert state.balances["seller"] == 950
    lock = state.locked[ad.tx_id]
    assert (lock.owner, lock.payment, lock.deposit, lock.ad_id) == ("seller", 0, 50, ad.tx_id)
    assert state.total() == state.genesis_total


def test_advertisement_opens_lifecycle(listed):
    ad, state = listed
    lifecycle = state.lifecycles[ad.tx_id]
    assert lifecycle.phase is Phase.BIDDING
    assert lifecycle.deadlines.sale_end == 11
    assert state.ad_by_label("lot").ad_id == ad.tx_id


def test_bid_locks_payment_and_deposit(ctx, listed):
    ad, state = listed
    b = bid(ad, "alice", 120, 20, label="a1")
    state = extend(state, ctx, b)

    assert state.balances["alice"] == 1_860
    assert state.locked[b.tx_id].total == 140
    assert state.ad_bids(ad.tx_id)[0].inclusion == (2, 0)
    assert state.bid_by_label(ad.tx_id, "a1").bid_id == b.tx_id
    assert state.total() == state.genesis_total


def test_apply_block_leaves_input_untouched(ctx, listed):
    ad, state = listed
    before = state.fingerprint()
    extend(state, ctx, bid(ad, "alice", 120))
    assert state.fingerprint() == before
    assert state.balances["alice"] == 2_000


# ---------------------------------------------------------------------------
# Sequential in-block validation
# ---------------------------------------------------------------------------

def test_later_tx_sees_earlier_tx_of_same_block(ctx, listed):
    ad, state = listed
    state = extend(state, ctx, bid(ad, "alice", 120), bid(ad, "bob", 130))
    assert [b.price for b in state.ad_bids(ad.tx_id)] == [120, 130]


def test_invalid_tx_rejects_the_whole_block(ctx, listed):
    ad, state = listed
    block = block_for(state, ctx, bid(ad, "alice", 120), bid(ad, "bob", 125))

    with pytest.raises(InvalidBlock, match="IncrementViolation"):
        apply_block(block, state, ctx)
    assert not validate_block(block, state, ctx)


def test_overspending_within_a_block(ctx, listed):
    ad, state = listed
    block = block_for(state, ctx, bid(ad, "alice", 1_500), bid(ad, "alice", 1_500))
    with pytest.raises(InvalidBlock, match="InsufficientBalance"):
        apply_block(block, state, ctx)


# ---------------------------------------------------------------------------
# Header checks
# ---------------------------------------------------------------------------

def test_block_must_extend_head(ctx, listed):
    _, state = listed
    block = Block.build(3, state.head, ctx.roster.proposer_for(3), [])
    with pytest.raises(InvalidBlock, match="does not extend"):
        apply_block(block, state, ctx)


def test_block_parent_digest(ctx, listed):
    _, state = listed
    block = Block.build(2, bytes(32), ctx.roster.proposer_for(2), [])
    with pytest.raises(InvalidBlock, match="parent"):
        apply_block(block, state, ctx)


def test_block_proposer_turn(ctx, listed):
    _, state = listed
    wrong = "p2" if ctx.roster.proposer_for(2) == "p1" else "p1"
    block = Block.build(2, state.head, wrong, [])
    with pytest.raises(InvalidBlock, match="out of turn"):
        apply_block(block, state, ctx)


def test_block_digest_tampering(ctx, listed):
    _, state = listed
    good = block_for(state, ctx)
    forged = Block(good.number, good.parent_digest, bytes(32), good.proposer, good.txs)
    with pytest.raises(InvalidBlock, match="digest mismatch"):
        apply_block(forged, state, ctx)


# ---------------------------------------------------------------------------
# Phase bookkeeping
# ---------------------------------------------------------------------------

def test_sale_end_moves_reveal_trade_to_await_reveal(ctx):
    h = commit_reserve_price(150, b"s" * 16)
    ad = tx("seller", TxKind.ADVERTISEMENT, english(reveal_flag=True, reveal_duration=3, reserve_hash=h))
    state = extend(genesis(ctx), ctx, ad)

    state = advance_to(state, ctx, 10)
    assert state.lifecycles[ad.tx_id].phase is Phase.BIDDING
    state = advance_to(state, ctx, 11)
    assert state.lifecycles[ad.tx_id].phase is Phase.AWAIT_REVEAL


# ---------------------------------------------------------------------------
# Replay
# ---------------------------------------------------------------------------

def test_replay_reproduces_state(ctx, listed):
    ad, state = listed
    state = extend(state, ctx, bid(ad, "alice", 120))
    state = extend(state, ctx, bid(ad, "bob", 140, 5))

    again = replay(state.blocks, ctx, ALLOCATION)
    assert again.fingerprint() == state.fingerprint()
    assert again.head == state.head


def test_replay_rejects_foreign_genesis(ctx, listed):
    _, state = listed
    real = state.blocks[0]
    fake = Block.build(0, bytes(31) + b"\x01", real.proposer, [])
    assert fake.digest != real.digest
    with pytest.raises(InvalidBlock, match="genesis"):
        replay((fake,) + state.blocks[1:], ctx, ALLOCATION)
