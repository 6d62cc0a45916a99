"""
Filename: money.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Money flow after matching: which locked payments and deposits are
    unlocked to their owners and which are transferred.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from typing import Any, List, Optional, Sequence, Tuple

from ..chain.tx import TxKind
from ..market.types import AdRecord, BidRecord, Component, FundsTransferPayload, FundsUnlockPayload

FundsMove = Tuple[TxKind, Any]


def _unlock(lock_id: bytes, component: Component, ad_id: bytes) -> FundsMove:
    return TxKind.FUNDS_UNLOCK, FundsUnlockPayload(lock_id, component, ad_id)


def _transfer(lock_id: bytes, component: Component, recipient: str, ad_id: bytes) -> FundsMove:
    return TxKind.FUNDS_TRANSFER, FundsTransferPayload(lock_id, component, recipient, ad_id)


def resolve_money_flow(ad: AdRecord,
                       ad_bids: Sequence[BidRecord],
                       winner: Optional[BidRecord],
                       revealed: bool,
                       proposer: str,
                       escrow: bool = False) -> List[FundsMove]:
    """Funds transactions settling a matched trade.

    Locks routed to an escrow case (advertisement and winning bid of an
    assigned physical-goods trade) are left to the escrow.

    :param ad: advertisement record
    :param ad_bids: all bids of the advertisement
    :param winner: assigned bid, or None when no assignment happens
    :param revealed: whether a valid revelation is on the ledger
    :param proposer: proposer of the trigger block; receives a forfeited supplier deposit
    :param escrow: whether an escrow case holds the winner's funds
    :return: (kind, payload) pairs in emission order
    """
    moves: List[FundsMove] = []
    held = escrow and winner is not None
    ad_id = ad.ad_id

    if ad.payment and not held:
        if winner is not None:
            moves.append(_transfer(ad_id, Component.PAYMENT, winner.sender, ad_id))
        else:
            moves.append(_unlock(ad_id, Component.PAYMENT, ad_id))

    if ad.deposit:
        if ad.ad.reveal_flag and not revealed:
            moves.append(_transfer(ad_id, Component.DEPOSIT, proposer, ad_id))
        elif not held:
            moves.append(_unlock(ad_id, Component.DEPOSIT, ad_id))

    for bid in ad_bids:
        won = winner is not None and bid.bid_id == winner.bid_id

        if won and held:
            continue

        if bid.payment:
            if won:
                moves.append(_transfer(bid.bid_id, Component.PAYMENT, ad.supplier, ad_id))
            else:
                moves.append(_unlock(bid.bid_id, Component.PAYMENT, ad_id))

        if bid.deposit:
            moves.append(_unlock(bid.bid_id, Component.DEPOSIT, ad_id))

    return moves
