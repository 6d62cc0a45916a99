"""
Filename: runner.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Deterministic run loop. At every tick the scenario events of that block
    are submitted, the next block is proposed, every node processes it and
    the per-block audits sweep the result.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import logging
import numpy as np

from dataclasses import dataclass, field
from typing import List, Optional

from ..chain.error import ValidationFailed
from ..chain.tx import TxKind
from ..engine import Marketplace
from ..roles.user import (
    AdvertiseRequest,
    BidRequest,
    DeliverRequest,
    DisputeRequest,
    EvaluateRequest,
    ResolveRequest,
)
from ..sys.base import EngineConfig
from .audit import AuditReport, Auditor
from .generator import random_english_scenario
from .scenario import Scenario
from .trace import Trace, dump_ledger

logger = logging.getLogger(__name__)

REQUEST_KINDS = {
    AdvertiseRequest: TxKind.ADVERTISEMENT,
    BidRequest: TxKind.BID,
    EvaluateRequest: TxKind.EVALUATION,
    DisputeRequest: TxKind.ARBITRATION_REQUEST,
    ResolveRequest: TxKind.DISPUTE_RESOLUTION,
    DeliverRequest: TxKind.DELIVERY_RECORD,
}


@dataclass
class RunResult:
    trace: Trace
    ledger: List[str]
    report: Optional[AuditReport]
    market: Marketplace


def run_scenario(scenario: Scenario,
                 config: EngineConfig = None,
                 max_blocks: Optional[int] = None,
                 audit: bool = True,
                 replicas: bool = True) -> RunResult:
    """Run a scenario to quiescence or to its block limit.

    :param scenario: parsed scenario
    :param config: engine configuration; defaults when omitted
    :param max_blocks: block limit overriding the scenario and configuration
    :param audit: run the audit suite
    :param replicas: compare every node's ledger after every block
    :return: trace, ledger dump, audit report and the final engine
    """
    market = Marketplace.from_scenario(scenario, config)
    limit = max_blocks or scenario.max_blocks or market.config.max_blocks
    trace = Trace()
    auditor = Auditor(market, replicas) if audit else None
    events = scenario.events_at()
    last = scenario.last_event_block
    tick = 0

    for tick in range(1, limit + 1):
        for ev in events.get(tick, ()):
            try:
                market.submit(ev.actor, ev.request)
            except ValidationFailed as e:
                logger.info("tick %d: %s request rejected: %s", tick, ev.actor, e.reason)
                trace.reject(tick, ev.actor, REQUEST_KINDS[type(ev.request)].value, e)

        result = market.step()

        trace.propose(tick, result.block)
        for tx, failure in result.drops:
            trace.drop(tick, tx, failure)
        for sender, kind, failure in result.rejections:
            trace.reject(tick, sender, kind, failure)
        for event in result.notifications:
            trace.notify(tick, event)

        if auditor is not None:
            for violation in auditor.sweep(result):
                trace.audit(tick, "violation", violation)

        if tick >= last and market.is_quiescent():
            break
    else:
        logger.info("%s: stopped at the block limit %d", scenario.name, limit)

    report = None
    if auditor is not None:
        swept = len(auditor.report.violations)
        report = auditor.finish()
        for violation in report.violations[swept:]:
            trace.audit(tick, "violation", violation)
        trace.audit(tick, "digest", report.determinism_digest)
        trace.audit(tick, "result", "pass" if report.ok else f"fail violations={len(report.violations)}")

    return RunResult(trace, dump_ledger(market.blocks), report, market)


@dataclass
class CampaignResult:
    count: int = 0
    matched: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def oracle_campaign(count: int, seed: int = 0, max_bids: int = 20) -> CampaignResult:
    """Run `count` randomized English scenarios and collect every audit violation.

    :param count: number of scenarios
    :param seed: campaign seed; scenario seeds are drawn from it
    :param max_bids: bid bound per scenario
    :return: campaign summary
    """
    campaign = CampaignResult()
    seeds = np.random.default_rng(seed).integers(0, 2 ** 63, size=count)

    for scenario_seed in seeds:
        scenario = random_english_scenario(int(scenario_seed), max_bids)
        report = run_scenario(scenario, replicas=False).report

        campaign.count += 1
        campaign.matched += sum(1 for status in report.matching.values() if status == "match")
        campaign.violations.extend(f"{scenario.name}: {v}" for v in report.violations)

    logger.info("campaign of %d scenarios: %d violations", campaign.count, len(campaign.violations))

    return campaign
