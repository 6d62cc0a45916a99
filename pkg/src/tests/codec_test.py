"""
Filename: codec_test.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Tests for canonical encoding, transaction identifiers and block digests.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import pytest
from blockmarket.chain.block import GENESIS_PARENT, Block, genesis
from blockmarket.chain.codec import DIGEST_SIZE, digest, encode, encode_int
from blockmarket.chain.error import BadRoster
from blockmarket.chain.tx import FundsAttachment, Identity, Role, Roster, TransactionEnvelope, TxKind
from blockmarket.market.types import BidPayload, TradeType

from ._market import english, roster


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------

def test_encode_int_is_8_bytes_big_endian():
    assert encode_int(1) == b"\x00" * 7 + b"\x01"
    assert encode_int(-1) == b"\xff" * 8


def test_encode_distinguishes_types():
    assert encode(1) != encode(True)
    assert encode("1") != encode(b"1")
    assert encode(None) != encode(())


def test_encode_is_injective_on_nesting():
    assert encode(((1,), 2)) != encode((1, (2,)))
    assert encode(("ab", "c")) != encode(("a", "bc"))


def test_encode_frozenset_ignores_insertion_order():
    assert encode(frozenset({"a", "b", "c"})) == encode(frozenset({"c", "b", "a"}))


def test_encode_dataclass_and_enum():
    assert encode(english()) == encode(english())
    assert encode(english(start=100)) != encode(english(start=101))
    assert encode(TradeType.DUTCH) != encode(TradeType.ENGLISH)


def test_encode_rejects_unknown_type():
    with pytest.raises(TypeError, match="No canonical encoding"):
        encode(1.5)


def test_digest_size():
    assert len(digest(b"")) == DIGEST_SIZE


# ---------------------------------------------------------------------------
# Transactions
# ---------------------------------------------------------------------------

def test_tx_id_is_deterministic():
    payload = BidPayload(b"\x01" * 32, b"hello")
    a = TransactionEnvelope.create("alice", TxKind.BID, payload, FundsAttachment(10), 1)
    b = TransactionEnvelope.create("alice", TxKind.BID, payload, FundsAttachment(10), 1)
    assert a.tx_id == b.tx_id
    assert len(a.tx_id) == DIGEST_SIZE


@pytest.mark.parametrize("change", [
    dict(sender="bob"),
    dict(funds=FundsAttachment(11)),
    dict(nonce=2),
    dict(payload=BidPayload(b"\x01" * 32, b"hellO")),
])
def test_tx_id_depends_on_every_field(change):
    base = dict(sender="alice", kind=TxKind.BID, payload=BidPayload(b"\x01" * 32, b"hello"),
                funds=FundsAttachment(10), nonce=1)
    a = TransactionEnvelope.create(**base)
    base.update(change)
    assert TransactionEnvelope.create(**base).tx_id != a.tx_id


def test_proposer_created_kinds():
    for kind in (TxKind.ASSIGNMENT, TxKind.NO_ASSIGNMENT, TxKind.FUNDS_UNLOCK,
                 TxKind.FUNDS_TRANSFER, TxKind.ESCROW_RELEASE):
        assert TransactionEnvelope.create("p1", kind, None).proposer_created
    assert not TransactionEnvelope.create("alice", TxKind.BID, None).proposer_created


def test_funds_reject_negative_amounts():
    with pytest.raises(ValueError, match="non-negative"):
        FundsAttachment(payment=-1)


def test_funds_total_and_empty():
    assert FundsAttachment(3, 4).total == 7
    assert FundsAttachment().empty
    assert FundsAttachment(0, 0).empty


# ---------------------------------------------------------------------------
# Roster
# ---------------------------------------------------------------------------

def test_round_robin_proposers():
    r = roster(p1="proposer", alice="consumer", p2="proposer,supplier")
    assert [r.proposer_for(n) for n in range(4)] == ["p1", "p2", "p1", "p2"]


def test_roster_requires_a_proposer():
    with pytest.raises(BadRoster, match="proposer"):
        roster(alice="consumer")


def test_roster_rejects_duplicates():
    ident = Identity("p1", frozenset({Role.PROPOSER}))
    with pytest.raises(BadRoster, match="duplicate"):
        Roster([ident, ident])


# ---------------------------------------------------------------------------
# Blocks
# ---------------------------------------------------------------------------

def test_genesis_is_fixed():
    r = roster(p1="proposer")
    assert genesis(r) == genesis(r)
    assert genesis(r).parent_digest == GENESIS_PARENT
    assert genesis(r).txs == ()


def test_block_digest_verifies_and_detects_tampering():
    t1 = TransactionEnvelope.create("alice", TxKind.BID, BidPayload(b"\x01" * 32, b"x"), nonce=1)
    t2 = TransactionEnvelope.create("bob", TxKind.BID, BidPayload(b"\x01" * 32, b"y"), nonce=1)
    block = Block.build(1, GENESIS_PARENT, "p1", [t1, t2])
    assert block.verify_digest()

    reordered = Block(1, GENESIS_PARENT, block.digest, "p1", (t2, t1))
    assert not reordered.verify_digest()


def test_block_digest_covers_parent():
    a = Block.build(1, GENESIS_PARENT, "p1", [])
    b = Block.build(1, b"\x01" * DIGEST_SIZE, "p1", [])
    assert a.digest != b.digest
