"""
Filename: __init__.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    This file selectively exposes a curated interface for running and
    extending the marketplace simulator: the engine, scenario parsing and
    running, and the plug-in surface for use-case policies.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from .engine import Marketplace, TickResult
from .chain.tx import Identity, Role, Roster, TxKind
from .market.types import TradeType
from .policy.plugins import PolicyPlugin, PolicyPlugins
from .sys.factories.plugins import PluginFactory
from .harness.scenario import Scenario, parse_scenario, parse_text
from .harness.runner import RunResult, oracle_campaign, run_scenario
from .harness.audit import AuditReport


__all__ = [
    "Marketplace",
    "TickResult",
    "Identity",
    "Role",
    "Roster",
    "TxKind",
    "TradeType",
    "PolicyPlugin",
    "PolicyPlugins",
    "PluginFactory",
    "Scenario",
    "parse_scenario",
    "parse_text",
    "RunResult",
    "run_scenario",
    "oracle_campaign",
    "AuditReport",
]
