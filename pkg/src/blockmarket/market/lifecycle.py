"""
Filename: lifecycle.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Per-advertisement trade lifecycle. The transition relation is a directed
    graph; a trade moves only along its edges and is finished at a sink.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import networkx as nx

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .error import IllegalTransition
from .types import ItemAdvertisement


class Phase(Enum):
    BIDDING = "Bidding"
    AWAIT_REVEAL = "AwaitReveal"
    AWAIT_EVAL = "AwaitEval"
    ASSIGNED = "Assigned"
    NO_ASSIGNMENT = "NoAssignment"
    ESCROW_OPEN = "EscrowOpen"
    DISPUTED = "Disputed"
    SETTLED = "Settled"


TRANSITIONS = nx.DiGraph()
TRANSITIONS.add_edges_from([
    (Phase.BIDDING, Phase.AWAIT_REVEAL),
    (Phase.BIDDING, Phase.AWAIT_EVAL),
    (Phase.BIDDING, Phase.ASSIGNED),
    (Phase.BIDDING, Phase.NO_ASSIGNMENT),
    (Phase.AWAIT_REVEAL, Phase.ASSIGNED),
    (Phase.AWAIT_REVEAL, Phase.NO_ASSIGNMENT),
    (Phase.AWAIT_EVAL, Phase.ASSIGNED),
    (Phase.AWAIT_EVAL, Phase.NO_ASSIGNMENT),
    (Phase.ASSIGNED, Phase.SETTLED),
    (Phase.ASSIGNED, Phase.ESCROW_OPEN),
    (Phase.ESCROW_OPEN, Phase.SETTLED),
    (Phase.ESCROW_OPEN, Phase.DISPUTED),
    (Phase.DISPUTED, Phase.SETTLED),
    # refunds of an unassigned trade are complete
    (Phase.NO_ASSIGNMENT, Phase.SETTLED),
])


def can_transition(source: Phase, target: Phase) -> bool:
    return TRANSITIONS.has_edge(source, target)


def is_terminal(phase: Phase) -> bool:
    return TRANSITIONS.out_degree(phase) == 0


@dataclass(frozen=True)
class Deadlines:
    """Block numbers at which the phases of a trade expire."""
    sale_end: int
    reveal_end: Optional[int] = None
    eval_end: Optional[int] = None

    @property
    def final(self) -> int:
        """Block whose application triggers matching (ignoring Dutch windows)."""
        if self.reveal_end is not None:
            return self.reveal_end
        if self.eval_end is not None:
            return self.eval_end
        return self.sale_end


def derived_deadlines(ad: ItemAdvertisement, ad_block_num: int) -> Deadlines:
    """Derive deadline block numbers from the advertisement durations.

    The revelation window is anchored at the sale end, the evaluation window
    at the advertisement block.

    :param ad: advertisement
    :param ad_block_num: number of the block including the advertisement
    :return: deadlines
    """
    sale_end = ad_block_num + ad.sale_duration
    reveal_end = sale_end + ad.reveal_duration if ad.reveal_flag else None
    eval_end = ad_block_num + ad.eval_duration if ad.committee else None

    return Deadlines(sale_end, reveal_end, eval_end)


@dataclass(frozen=True)
class TradeLifecycle:
    """Matching state of one advertisement."""
    ad_id: bytes
    phase: Phase
    deadlines: Deadlines
    winning_bid: Optional[bytes] = None

    def advance(self, phase: Phase, winning_bid: Optional[bytes] = None) -> "TradeLifecycle":
        """Move to `phase`, which must be a successor of the current phase.

        :param phase: target phase
        :param winning_bid: winning bid id when entering Assigned
        :return: the new lifecycle value
        """
        if not can_transition(self.phase, phase):
            raise IllegalTransition(self.phase.value, phase.value)

        return replace(self, phase=phase, winning_bid=winning_bid or self.winning_bid)

    @property
    def settled(self) -> bool:
        return is_terminal(self.phase)
