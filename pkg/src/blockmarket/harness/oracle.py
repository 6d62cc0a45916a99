"""
Filename: oracle.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Matching oracle. Recomputes the outcome of every advertisement by brute
    force from the raw blocks and compares it with the Assignment or
    NoAssignment on the ledger. It shares no code with the policy package:
    windows, scores, reserve checks and the pseudo-random tie-break are all
    reimplemented here.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import hashlib

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..chain.block import Block
from ..chain.tx import TransactionEnvelope, TxKind
from ..defaults import SCORE_SCALE
from ..market.types import Component

MATCH = "match"
MISMATCH = "mismatch"
MISSING = "missing"
OPEN = "open"
UNVERIFIED = "unverified"

# Outcomes the oracle can recompute for the score-based trade types
VERIFIED_PLUGINS = {"weighted-sum-max", "max-scalar"}


@dataclass
class _Bid:
    tx: TransactionEnvelope
    inclusion: Tuple[int, int]

    @property
    def price(self) -> int:
        return self.tx.funds.payment or 0


@dataclass
class _Trade:
    tx: TransactionEnvelope
    block: int
    bids: List[_Bid] = field(default_factory=list)
    revelations: List[TransactionEnvelope] = field(default_factory=list)
    evaluations: List[TransactionEnvelope] = field(default_factory=list)
    outcomes: List[Tuple[TransactionEnvelope, int]] = field(default_factory=list)
    transfers: List[Tuple[TransactionEnvelope, int]] = field(default_factory=list)


@dataclass(frozen=True)
class OracleVerdict:
    ad_id: bytes
    label: str
    status: str
    expected_winner: Optional[bytes] = None
    actual_winner: Optional[bytes] = None
    expected_trigger: Optional[int] = None
    actual_trigger: Optional[int] = None
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.status in (MISMATCH, MISSING)

    def __str__(self):
        def short(bid_id):
            return bid_id.hex()[:8] if bid_id is not None else "none"

        text = (f"{self.label} {self.status} expected={short(self.expected_winner)}@{self.expected_trigger} "
                f"actual={short(self.actual_winner)}@{self.actual_trigger}")
        return f"{text} {self.detail}".rstrip()


def _collect(blocks: Sequence[Block]) -> Dict[bytes, _Trade]:
    trades: Dict[bytes, _Trade] = {}

    for block in blocks:
        for index, tx in enumerate(block.txs):
            if tx.kind is TxKind.ADVERTISEMENT:
                trades[tx.tx_id] = _Trade(tx, block.number)
                continue

            trade = trades.get(getattr(tx.payload, "ad_id", None))
            if trade is None:
                continue

            if tx.kind is TxKind.BID:
                trade.bids.append(_Bid(tx, (block.number, index)))
            elif tx.kind is TxKind.REVELATION:
                trade.revelations.append(tx)
            elif tx.kind is TxKind.EVALUATION:
                trade.evaluations.append(tx)
            elif tx.kind in (TxKind.ASSIGNMENT, TxKind.NO_ASSIGNMENT):
                trade.outcomes.append((tx, block.number))
            elif tx.kind is TxKind.FUNDS_TRANSFER:
                trade.transfers.append((tx, block.number))

    return trades


def _tie_break(candidates: List[_Bid], trigger_digest: bytes, ad_id: bytes) -> _Bid:
    ordered = sorted(candidates, key=lambda b: b.inclusion)
    word = int.from_bytes(hashlib.sha256(trigger_digest + ad_id).digest()[:8], "big")
    return ordered[word % len(ordered)]


def _trigger(trade: _Trade) -> int:
    ad = trade.tx.payload
    sale_end = trade.block + ad.sale_duration

    if ad.reveal_flag:
        return sale_end + ad.reveal_duration
    if ad.committee:
        return trade.block + ad.eval_duration

    if ad.trade_type.value == "dutch":
        boundary = trade.block + ad.bid_duration
        while boundary < sale_end:
            if any(b.inclusion[0] < boundary for b in trade.bids):
                return boundary
            price = ad.start_price - ((boundary - trade.block) // ad.bid_duration) * ad.bid_increment
            if price < 0 or (ad.public_reserve is not None and price < ad.public_reserve):
                return boundary
            boundary += ad.bid_duration

    return sale_end


def _fixed_vector(content: bytes) -> Tuple[int, ...]:
    try:
        parts = [p for p in content.decode("utf-8").split(",") if p.strip()]
        values = [Decimal(p.strip()) for p in parts]
    except (UnicodeDecodeError, InvalidOperation):
        return ()

    if not all(v.is_finite() for v in values):
        return ()

    return tuple(int(v * SCORE_SCALE) for v in values)


def _truncated_mean(vectors: List[Tuple[int, ...]]) -> Tuple[int, ...]:
    result = []
    for column in zip(*vectors):
        total = sum(column)
        quotient = abs(total) // len(vectors)
        result.append(-quotient if total < 0 else quotient)
    return tuple(result)


def _weighted_max(scores: List[Tuple[int, ...]], weights) -> Tuple[int, ...]:
    def key(score):
        w = weights if weights is not None and len(weights) == len(score) else (1,) * len(score)
        return sum(s * x for s, x in zip(score, w)), score

    return max(scores, key=key)


def _scores(trade: _Trade, plugin: str) -> Optional[Dict[bytes, Tuple[int, ...]]]:
    ad = trade.tx.payload

    if ad.trade_type.value == "committee-custom":
        per_bid = {b.tx.tx_id: [] for b in trade.bids}
        for ev in trade.evaluations:
            if ev.payload.score is not None and ev.payload.bid_id in per_bid:
                per_bid[ev.payload.bid_id].append(ev.payload.score)
        if any(not v for v in per_bid.values()):
            return None
        return {bid_id: _truncated_mean(v) for bid_id, v in per_bid.items()}

    if plugin == "max-scalar":
        return {b.tx.tx_id: (b.price,) for b in trade.bids}

    return {b.tx.tx_id: _fixed_vector(b.tx.payload.content) for b in trade.bids}


def _best(scores: List[Tuple[int, ...]], plugin: str, weights) -> Tuple[int, ...]:
    if plugin == "max-scalar":
        return max(scores)
    return _weighted_max(scores, weights)


def _revealed_reserve(trade: _Trade) -> Optional[int]:
    ad = trade.tx.payload
    for rev in trade.revelations:
        p = rev.payload
        committed = hashlib.sha256(p.res_price.to_bytes(8, "big", signed=True) + p.salt).digest()
        if committed == ad.reserve_hash:
            return p.res_price
    return None


def expected_outcome(trade: _Trade,
                     blocks: Sequence[Block],
                     plugins: Mapping[str, str]) -> Tuple[Optional[_Bid], int, bool]:
    """Brute-force outcome of one trade.

    :return: (winning bid or None, trigger block, verified)
    """
    ad = trade.tx.payload
    ad_id = trade.tx.tx_id
    trigger = _trigger(trade)
    trade_type = ad.trade_type.value
    bids = [b for b in trade.bids if b.inclusion[0] < trigger or trade_type != "dutch"]
    winner = None
    verified = True

    if bids and trigger < len(blocks):
        seed = blocks[trigger].digest

        if trade_type == "english":
            top = max(b.price for b in bids)
            winner = _tie_break([b for b in bids if b.price == top], seed, ad_id)

        elif trade_type == "dutch":
            winner = _tie_break(bids, seed, ad_id)

        elif trade_type == "committee-rank":
            # evaluations are collected in ledger order
            chosen = next((ev.payload.decision for ev in trade.evaluations
                           if ev.payload.decision is not None), None)
            winner = next((b for b in bids if b.tx.tx_id == chosen), None)

        else:
            plugin = plugins.get(trade_type)
            if plugin not in VERIFIED_PLUGINS:
                return None, trigger, False

            scores = _scores(trade, plugin)
            if scores is not None:
                best = _best(list(scores.values()), plugin, ad.weights)
                winner = _tie_break([b for b in bids if scores[b.tx.tx_id] == best], seed, ad_id)

    if ad.reveal_flag:
        reserve = _revealed_reserve(trade)
        if winner is not None and (reserve is None or winner.price < reserve):
            winner = None

    return winner, trigger, verified


def _forfeit_problem(trade: _Trade, blocks: Sequence[Block], trigger: int) -> str:
    """An unrevealed reserve forfeits the supplier deposit to the trigger block proposer."""
    ad_tx = trade.tx
    if not ad_tx.payload.reveal_flag or not ad_tx.funds.deposit or _revealed_reserve(trade) is not None:
        return ""
    if trigger + 1 >= len(blocks):
        return ""

    proposer = blocks[trigger].proposer
    for tx, _ in trade.transfers:
        p = tx.payload
        if p.lock_id == ad_tx.tx_id and p.component is Component.DEPOSIT and p.recipient == proposer:
            return ""

    return f"deposit not forfeited to {proposer}"


def audit_oracle(blocks: Sequence[Block], plugins: Mapping[str, str]) -> List[OracleVerdict]:
    """Compare every on-ledger outcome with its brute-force recomputation.

    :param blocks: the full chain, genesis first
    :param plugins: trade type name -> bound plug-in name
    :return: one verdict per advertisement, in ledger order
    """
    verdicts = []
    head = blocks[-1].number if blocks else 0

    for ad_id, trade in _collect(blocks).items():
        label = trade.tx.payload.label
        winner, trigger, verified = expected_outcome(trade, blocks, plugins)
        expected = winner.tx.tx_id if winner is not None else None

        if not trade.outcomes:
            status = MISSING if head > trigger + 1 else OPEN
            verdicts.append(OracleVerdict(ad_id, label, status, expected, None, trigger))
            continue

        outcome, _ = trade.outcomes[0]
        actual = getattr(outcome.payload, "winning_bid", None)
        actual_trigger = outcome.payload.trigger_block

        if len(trade.outcomes) > 1:
            status, detail = MISMATCH, f"{len(trade.outcomes)} outcomes"
        elif not verified:
            status, detail = UNVERIFIED, ""
        elif (expected, trigger) != (actual, actual_trigger):
            status, detail = MISMATCH, ""
        else:
            detail = _forfeit_problem(trade, blocks, trigger)
            status = MISMATCH if detail else MATCH

        verdicts.append(OracleVerdict(ad_id, label, status, expected, actual, trigger, actual_trigger, detail))

    return verdicts
