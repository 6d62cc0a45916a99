"""
Filename: cli.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Command line entry point.

        blockmarket run ebay_english --audit --trace run.trace --dump-ledger run.ledger
        blockmarket oracle-campaign --count 1000 --seed 7

    The exit code is 0 iff no audit reported a violation.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import argparse
import logging
import sys

from dataclasses import replace
from pathlib import Path
from typing import List, Optional

from ..engine import Marketplace
from ..sys.base import EngineConfig
from ..sys.error import BadEngineConfiguration
from .error import ParseError
from .runner import oracle_campaign, run_scenario
from .scenario import Scenario, bundled_names, bundled_scenario, parse_scenario
from .trace import write_lines


def load_scenario(name: str) -> Scenario:
    """A scenario file, or the name of a bundled scenario."""
    path = Path(name)
    if not path.exists() and name in bundled_names():
        path = bundled_scenario(name)

    return parse_scenario(path)


def load_config(filename: Optional[str]) -> Optional[EngineConfig]:
    if filename is None:
        return None
    return Marketplace.load_config(filename)


def cmd_run(args) -> int:
    scenario = load_scenario(args.scenario)
    if args.seed is not None:
        scenario = replace(scenario, seed=args.seed)

    result = run_scenario(scenario, load_config(args.config), args.max_blocks, audit=args.audit)

    if args.trace:
        write_lines(args.trace, result.trace.lines())
    else:
        sys.stdout.write(result.trace.text())

    if args.dump_ledger:
        write_lines(args.dump_ledger, result.ledger)

    if result.report is None:
        return 0

    for violation in result.report.violations:
        print(f"violation: {violation}", file=sys.stderr)

    return 0 if result.report.ok else 1


def cmd_oracle_campaign(args) -> int:
    campaign = oracle_campaign(args.count, args.seed, args.max_bids)

    for violation in campaign.violations:
        print(f"violation: {violation}", file=sys.stderr)
    print(f"scenarios: {campaign.count} matched: {campaign.matched} violations: {len(campaign.violations)}")

    return 0 if campaign.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blockmarket",
                                     description="deterministic blockchain marketplace simulator")
    parser.add_argument("--log-level", default="WARNING",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="logging level")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run one scenario")
    run.add_argument("scenario", help=f"scenario file or bundled name ({', '.join(bundled_names())})")
    run.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    run.add_argument("--max-blocks", type=int, default=None, help="block limit")
    run.add_argument("--trace", metavar="PATH", default=None, help="write the trace here instead of stdout")
    run.add_argument("--dump-ledger", metavar="PATH", default=None, help="write the ledger dump here")
    run.add_argument("--audit", action="store_true", help="run the audit suite")
    run.add_argument("--config", metavar="PATH", default=None, help="engine configuration (TOML)")
    run.set_defaults(handler=cmd_run)

    campaign = commands.add_parser("oracle-campaign", help="randomized English auctions against the oracle")
    campaign.add_argument("--count", type=int, default=1000, help="number of scenarios")
    campaign.add_argument("--seed", type=int, default=0, help="campaign seed")
    campaign.add_argument("--max-bids", type=int, default=20, help="bids per scenario, at most")
    campaign.set_defaults(handler=cmd_oracle_campaign)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level),
                        format="%(levelname)s %(name)s: %(message)s")

    try:
        return args.handler(args)
    except (ParseError, BadEngineConfiguration) as e:
        print(e.message, file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"file not found: {e.filename}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
