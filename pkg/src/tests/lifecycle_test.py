"""
Filename: lifecycle_test.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Tests for trade lifecycles, deadlines and the expiration tracker.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import pytest
from blockmarket.market.error import IllegalTransition
from blockmarket.market.lifecycle import (
    Deadlines,
    Phase,
    TradeLifecycle,
    can_transition,
    derived_deadlines,
    is_terminal,
)
from blockmarket.roles.tracker import Expiration, ExpirationTracker

from ._market import committee_ad, english



# ---------------------------------------------------------------------------
# Deadlines
# ---------------------------------------------------------------------------

def test_deadlines_of_a_plain_sale():
    d = derived_deadlines(english(sale=10), 1)
    assert d == Deadlines(11, None, None)
    assert d.final == 11


def test_reveal_window_follows_sale_end():
    d = derived_deadlines(english(sale=10, reveal_flag=True, reveal_duration=3, reserve_hash=bytes(32)), 1)
    assert (d.sale_end, d.reveal_end, d.final) == (11, 14, 14)


def test_eval_window_is_anchored_at_advertisement():
    d = derived_deadlines(committee_ad(), 1)
    assert (d.sale_end, d.eval_end, d.final) == (9, 15, 15)


# ---------------------------------------------------------------------------
# Transitions
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("path", [
    [Phase.BIDDING, Phase.ASSIGNED, Phase.SETTLED],
    [Phase.BIDDING, Phase.AWAIT_REVEAL, Phase.NO_ASSIGNMENT, Phase.SETTLED],
    [Phase.BIDDING, Phase.AWAIT_EVAL, Phase.ASSIGNED, Phase.ESCROW_OPEN, Phase.SETTLED],
    [Phase.BIDDING, Phase.ASSIGNED, Phase.ESCROW_OPEN, Phase.DISPUTED, Phase.SETTLED],
])
def test_legal_paths(path):
    lifecycle = TradeLifecycle(b"ad", path[0], Deadlines(5))
    for phase in path[1:]:
        lifecycle = lifecycle.advance(phase)
    assert lifecycle.settled


def test_illegal_transition():
    lifecycle = TradeLifecycle(b"ad", Phase.BIDDING, Deadlines(5))
    with pytest.raises(IllegalTransition, match="from: Bidding\tto: Disputed"):
        lifecycle.advance(Phase.DISPUTED)


def test_settled_is_the_only_terminal_phase():
    assert [p for p in Phase if is_terminal(p)] == [Phase.SETTLED]
    assert not can_transition(Phase.SETTLED, Phase.BIDDING)


def test_winning_bid_is_kept():
    lifecycle = TradeLifecycle(b"ad", Phase.BIDDING, Deadlines(5)).advance(Phase.ASSIGNED, b"w")
    assert lifecycle.advance(Phase.SETTLED).winning_bid == b"w"


# ---------------------------------------------------------------------------
# Expiration tracker
# ---------------------------------------------------------------------------

def test_tracker_fires_after_countdown():
    tracker = ExpirationTracker()
    assert not tracker.register(b"a", Expiration.SALE, 2)
    assert tracker.tick() == []
    assert tracker.remaining(b"a", Expiration.SALE) == 1
    assert tracker.tick() == [(b"a", Expiration.SALE)]
    assert len(tracker) == 0


def test_tracker_due_immediately():
    tracker = ExpirationTracker()
    assert tracker.register(b"a", Expiration.RELEASE, 0)
    assert (b"a", Expiration.RELEASE) not in tracker


def test_tracker_fires_in_registration_order():
    tracker = ExpirationTracker()
    tracker.register(b"b", Expiration.EVAL, 1)
    tracker.register(b"a", Expiration.SALE, 1)
    assert tracker.tick() == [(b"b", Expiration.EVAL), (b"a", Expiration.SALE)]


def test_tracker_cancel():
    tracker = ExpirationTracker()
    tracker.register(b"a", Expiration.SALE, 3)
    tracker.register(b"a", Expiration.REVEAL, 5)
    tracker.register(b"b", Expiration.SALE, 3)

    tracker.cancel(b"a", Expiration.SALE)
    assert (b"a", Expiration.REVEAL) in tracker and (b"a", Expiration.SALE) not in tracker

    tracker.cancel(b"a")
    assert len(tracker) == 1
