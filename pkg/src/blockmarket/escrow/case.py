"""
Filename: case.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Escrow cases for physical-goods trades. A case holds the locks that
    the money flow would otherwise settle at assignment time, and records
    who gets each held amount when the trade completes.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from dataclasses import dataclass, replace
from enum import Enum
from typing import Tuple

from ..chain.error import Rule, Stage, ValidationFailed
from ..market.types import AdRecord, AssignmentPayload, BidRecord, Component


class EscrowState(Enum):
    OPEN = "Open"
    DELIVERY_RECORDED = "DeliveryRecorded"
    DISPUTED = "Disputed"
    RESOLVED = "Resolved"
    RELEASED = "Released"

    @property
    def terminal(self) -> bool:
        return self in (EscrowState.RESOLVED, EscrowState.RELEASED)

    @property
    def releasable(self) -> bool:
        return self in (EscrowState.OPEN, EscrowState.DELIVERY_RECORDED)


@dataclass(frozen=True)
class HeldLock:
    """One component of a lock held by an escrow case.

    `payee` receives the amount on release; `owner` locked it.
    """
    lock_id: bytes
    component: Component
    amount: int
    owner: str
    payee: str


@dataclass(frozen=True)
class EscrowCase:
    ad_id: bytes
    escrow_id: str
    supplier: str
    winner: str
    holdings: Tuple[HeldLock, ...]
    state: EscrowState
    opened_at_block: int
    safety_window: int

    @property
    def held_payment(self) -> int:
        return sum(h.amount for h in self.holdings if h.component is Component.PAYMENT)

    @property
    def held_deposits(self) -> Tuple[int, int]:
        """(supplier deposit, winner deposit)"""
        supplier = sum(h.amount for h in self.holdings
                       if h.component is Component.DEPOSIT and h.owner == self.supplier)
        winner = sum(h.amount for h in self.holdings
                     if h.component is Component.DEPOSIT and h.owner == self.winner)
        return supplier, winner

    @property
    def release_block(self) -> int:
        return self.opened_at_block + self.safety_window

    @property
    def lock_ids(self) -> Tuple[bytes, ...]:
        return tuple(dict.fromkeys(h.lock_id for h in self.holdings))

    def is_party(self, node_id: str) -> bool:
        return node_id in (self.supplier, self.winner)

    def with_state(self, state: EscrowState) -> "EscrowCase":
        return replace(self, state=state)


def escrow_holdings(ad: AdRecord, winner: BidRecord) -> Tuple[HeldLock, ...]:
    """Locks of the advertisement and of the winning bid routed to escrow.

    The winner's payment is owed to the supplier, an advertisement payment
    (reverse flow) is owed to the winner, and deposits go back to their
    owners.

    :param ad: advertisement record
    :param winner: winning bid record
    :return: held components with non-zero amounts
    """
    held = [
        HeldLock(winner.bid_id, Component.PAYMENT, winner.payment or 0, winner.sender, ad.supplier),
        HeldLock(ad.ad_id, Component.PAYMENT, ad.payment or 0, ad.supplier, winner.sender),
        HeldLock(ad.ad_id, Component.DEPOSIT, ad.deposit or 0, ad.supplier, ad.supplier),
        HeldLock(winner.bid_id, Component.DEPOSIT, winner.deposit or 0, winner.sender, winner.sender),
    ]
    return tuple(h for h in held if h.amount > 0)


def open_escrow(assignment: AssignmentPayload,
                ad: AdRecord,
                winner: BidRecord,
                block_number: int) -> EscrowCase:
    """Open the escrow case created by applying an assignment.

    :param assignment: assignment payload naming the escrow identity
    :param ad: physical-goods advertisement record
    :param winner: winning bid record
    :param block_number: block containing the assignment
    :return: a new case in state Open
    """
    if not ad.ad.physical or assignment.escrow is None or assignment.safety_window is None:
        raise ValidationFailed(Stage.PLATFORM, Rule.NO_ESCROW_CONFIGURED, ad.ad.label)

    return EscrowCase(
        ad_id=ad.ad_id,
        escrow_id=assignment.escrow,
        supplier=ad.supplier,
        winner=winner.sender,
        holdings=escrow_holdings(ad, winner),
        state=EscrowState.OPEN,
        opened_at_block=block_number,
        safety_window=assignment.safety_window,
    )
