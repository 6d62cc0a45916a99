"""
Filename: rules.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Per-trade-type bid validity and the Dutch descending price schedule.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from typing import Optional, Sequence

from ..chain.error import Rule
from ..chain.tx import FundsAttachment
from ..market.types import AdRecord, BidPayload, BidRecord, ItemAdvertisement, TradeType


def dutch_window(ad_block_num: int, block_num: int, bid_duration: int) -> int:
    """Index k of the Dutch window containing `block_num`."""
    return (block_num - ad_block_num) // bid_duration


def dutch_price_at(ad_block_num: int,
                   block_num: int,
                   st_price: int,
                   bid_duration: int,
                   bid_increment: int) -> int:
    """Scheduled Dutch price: one decrement per elapsed window.

    :param ad_block_num: block including the advertisement
    :param block_num: block at which the price applies, >= ad_block_num
    :param st_price: starting price
    :param bid_duration: window length in blocks
    :param bid_increment: decrement per window
    :return: price in units; callers stop the auction instead of going below 0 or the reserve
    """
    if block_num < ad_block_num:
        raise ValueError(f"dutch_price_at: block {block_num} precedes advertisement block {ad_block_num}")

    return st_price - dutch_window(ad_block_num, block_num, bid_duration) * bid_increment


def dutch_price_for(ad: AdRecord, block_num: int) -> int:
    terms = ad.ad
    return dutch_price_at(ad.block_number, block_num, terms.start_price, terms.bid_duration, terms.bid_increment)


def dutch_exhausted(ad: ItemAdvertisement, price: int) -> bool:
    """True when the schedule has crossed below zero or the public reserve."""
    if price < 0:
        return True

    return ad.public_reserve is not None and price < ad.public_reserve


def validate_bid_for_trade(bid: BidPayload,
                           funds: FundsAttachment,
                           ad: AdRecord,
                           ad_bids: Sequence[BidRecord],
                           block_number: int,
                           matched: bool = False,
                           require_deposit: bool = False) -> Optional[Rule]:
    """Check a bid against the trade-type rules of its advertisement.

    :param bid: bid payload
    :param funds: payment/deposit attached to the bid
    :param ad: advertisement record
    :param ad_bids: bids for the advertisement already in the ledger, in inclusion order
    :param block_number: block the bid would be included in
    :param matched: whether the trade already has a matching outcome
    :param require_deposit: whether bids must carry a deposit
    :return: the violated rule, or None when the bid is valid
    """
    terms = ad.ad
    sale_end = ad.block_number + terms.sale_duration

    if block_number <= ad.block_number:
        return Rule.SALE_NOT_OPEN
    if matched or block_number >= sale_end:
        return Rule.SALE_CLOSED
    if require_deposit and not funds.deposit:
        return Rule.MISSING_DEPOSIT

    if terms.trade_type is TradeType.ENGLISH:
        if funds.payment is None:
            return Rule.MISSING_PAYMENT

        current_max = max((b.price for b in ad_bids), default=None)

        if current_max is None:
            return None if funds.payment >= terms.start_price else Rule.BELOW_STARTING_PRICE

        # equal-to-max bids join the open window
        if funds.payment == current_max or funds.payment >= current_max + terms.bid_increment:
            return None

        return Rule.INCREMENT_VIOLATION

    if terms.trade_type is TradeType.DUTCH:
        if funds.payment is None:
            return Rule.MISSING_PAYMENT

        window = dutch_window(ad.block_number, block_number, terms.bid_duration)
        price = dutch_price_for(ad, block_number)

        if dutch_exhausted(terms, price):
            return Rule.SALE_CLOSED
        if any(dutch_window(ad.block_number, b.inclusion[0], terms.bid_duration) < window for b in ad_bids):
            return Rule.SALE_CLOSED
        if funds.payment != price:
            return Rule.WRONG_WINDOW_PRICE

        return None

    if not bid.content:
        return Rule.EMPTY_CONTENT

    return None
