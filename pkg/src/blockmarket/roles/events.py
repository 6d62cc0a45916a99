"""
Filename: events.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Notifications emitted by node handlers to their users. They are written
    to the run trace and never change chain state.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union


class NotificationKind(Enum):
    ITEM_ASSIGNED = "ItemAssigned"
    NEW_HIGHEST_BID = "NewHighestBid"
    DUTCH_BID_SEEN = "DutchBidSeen"
    DUTCH_PRICE_LOWERED = "DutchPriceLowered"
    NO_ASSIGNMENT = "NoAssignment"
    DEPOSIT_RETURNED = "DepositReturned"
    DISPUTE_RESOLVED = "DisputeResolved"


@dataclass(frozen=True)
class NotificationEvent:
    target: str
    kind: NotificationKind
    ad_label: str
    value: Optional[Union[int, str]] = None

    def __str__(self):
        text = f"{self.target} {self.kind.value} ad={self.ad_label}"
        if self.value is not None:
            text += f" value={self.value}"
        return text
