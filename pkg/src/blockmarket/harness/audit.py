"""
Filename: audit.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Run audits. Per-block sweeps check conservation of funds, replica
    identity across nodes and the digest chain; the final pass re-admits
    the whole ledger from genesis, checks exactly-once matching and lock
    clearance, and runs the matching oracle. Audits collect violations and
    never raise.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import logging

from dataclasses import dataclass, field
from typing import Dict, List

from ..chain.error import InvalidBlock
from ..chain.state import replay
from ..chain.tx import TxKind
from ..engine import Marketplace, TickResult
from ..market.lifecycle import Phase
from .oracle import audit_oracle

logger = logging.getLogger(__name__)


@dataclass
class AuditReport:
    """Outcome of every audit of one run. `violations` is empty iff all pass."""
    conservation: List[bool] = field(default_factory=list)
    determinism_digest: str = ""
    matching: Dict[str, str] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class Auditor:

    def __init__(self, market: Marketplace, replicas: bool = True):
        self.market = market
        self.replicas = replicas
        self.report = AuditReport()

    def __violation(self, text: str) -> str:
        logger.warning("audit violation: %s", text)
        self.report.violations.append(text)
        return text

    def sweep(self, result: TickResult) -> List[str]:
        """Per-block audits after every node processed `result.block`.

        :param result: the tick just completed
        :return: violations found at this block
        """
        found = []
        state = self.market.state
        block = result.block

        conserved = state.total() == state.genesis_total
        self.report.conservation.append(conserved)
        if not conserved:
            found.append(self.__violation(
                f"conservation B{block.number}: total {state.total()} != genesis {state.genesis_total}"))

        parent = state.blocks[block.number - 1]
        if block.parent_digest != parent.digest or not block.verify_digest():
            found.append(self.__violation(f"digest-chain B{block.number}"))

        for node_id in result.invalid:
            found.append(self.__violation(f"replica B{block.number}: {node_id} rejected the block"))

        if self.replicas:
            reference = state.fingerprint()
            for node in self.market.nodes:
                if node.id not in result.invalid and node.state.fingerprint() != reference:
                    found.append(self.__violation(f"replica B{block.number}: {node.id} diverged"))

        return found

    def __admission(self):
        market = self.market
        try:
            replayed = replay(market.blocks, market.ctx, market.allocation)
        except InvalidBlock as e:
            self.__violation(f"admission: {e.message}")
            return

        if replayed.fingerprint() != market.state.fingerprint():
            self.__violation("admission: replayed ledger differs from the chain state")

    def __exactly_once(self):
        state = self.market.state
        outcomes: Dict[bytes, List[int]] = {}

        for block in state.blocks:
            for tx in block.txs:
                if tx.kind in (TxKind.ASSIGNMENT, TxKind.NO_ASSIGNMENT):
                    outcomes.setdefault(tx.payload.ad_id, []).append(block.number)

        uncapped = self.market.chain.block_tx_cap is None

        for ad_id, ad in state.ads.items():
            label = ad.ad.label
            deadlines = state.lifecycles[ad_id].deadlines
            included = outcomes.get(ad_id, [])

            if len(included) > 1:
                self.__violation(f"exactly-once {label}: {len(included)} outcomes")
            elif not included:
                if state.number > deadlines.final + 1 and self.market.chain.idle:
                    self.__violation(f"exactly-once {label}: no outcome after block {deadlines.final}")
                continue

            at = included[0]
            for name, end in (("reveal", deadlines.reveal_end), ("eval", deadlines.eval_end)):
                if end is not None and at <= end:
                    self.__violation(f"postponement {label}: outcome at B{at} before {name} end {end}")

            trigger = state.outcomes[ad_id].trigger_block
            if uncapped and at != trigger + 1:
                self.__violation(f"postponement {label}: outcome at B{at} for trigger {trigger}")

    def __lock_clearance(self):
        state = self.market.state
        for ad_id, lifecycle in state.lifecycles.items():
            if lifecycle.phase is Phase.SETTLED and state.locks_for(ad_id):
                self.__violation(f"locks {state.ads[ad_id].ad.label}: settled with funds still locked")

    def __oracle(self):
        for verdict in audit_oracle(self.market.blocks, self.market.ctx.plugins.names()):
            self.report.matching[verdict.label] = verdict.status
            if verdict.failed:
                self.__violation(f"oracle {verdict}")

    def finish(self) -> AuditReport:
        """Whole-ledger audits, run once the run has stopped.

        :return: the completed report
        """
        self.__admission()
        self.__exactly_once()
        self.__lock_clearance()
        self.__oracle()
        self.report.determinism_digest = self.market.state.head.hex()

        return self.report
