"""
Filename: tracker.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Per-trade expiration counters kept by block proposers. Every counter
    is decremented once per applied block and fires when it reaches zero.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from enum import Enum
from typing import Dict, List, Optional, Tuple


class Expiration(Enum):
    SALE = "sale"
    REVEAL = "reveal"
    EVAL = "eval"
    WINDOW = "window"
    RELEASE = "release"


Fired = Tuple[bytes, Expiration]


class ExpirationTracker:

    def __init__(self):
        self.__counters: Dict[Fired, int] = {}

    def __len__(self) -> int:
        return len(self.__counters)

    def __contains__(self, key: Fired) -> bool:
        return key in self.__counters

    def remaining(self, ad_id: bytes, kind: Expiration) -> Optional[int]:
        return self.__counters.get((ad_id, kind))

    def register(self, ad_id: bytes, kind: Expiration, blocks: int) -> bool:
        """Start a countdown of `blocks` applied blocks.

        :param ad_id: advertisement
        :param kind: expiration kind
        :param blocks: remaining blocks; a non-positive count is due immediately
        :return: True if the expiration is already due
        """
        if blocks <= 0:
            return True

        self.__counters[(ad_id, kind)] = blocks
        return False

    def cancel(self, ad_id: bytes, kind: Optional[Expiration] = None):
        """Drop one counter of a trade, or all of them."""
        for key in [k for k in self.__counters if k[0] == ad_id and (kind is None or k[1] is kind)]:
            del self.__counters[key]

    def tick(self) -> List[Fired]:
        """Account for one applied block.

        :return: expirations that fired, in registration order
        """
        fired = []
        for key in list(self.__counters):
            self.__counters[key] -= 1
            if self.__counters[key] == 0:
                fired.append(key)
                del self.__counters[key]

        return fired
