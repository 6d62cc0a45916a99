"""
Filename: runner_test.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Tests for scenario runs, the audit suite and the oracle.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import os
import time
from dataclasses import replace

import pytest
from blockmarket.chain.tx import TransactionEnvelope, TxKind
from blockmarket.harness.generator import random_english_scenario
from blockmarket.harness.oracle import MATCH, MISMATCH, audit_oracle
from blockmarket.harness.runner import oracle_campaign, run_scenario
from blockmarket.harness.scenario import bundled_scenario, parse_scenario, parse_text
from blockmarket.harness.trace import TraceKind

DATA = os.path.join(os.path.dirname(__file__), "data")

AUCTION = """
node p1 roles=proposer
node p2 roles=proposer
node seller roles=supplier balance=1000
node alice roles=consumer balance=2000
node bob roles=consumer balance=2000
at 1 advertise seller label=lot type=english dsale=10 stprice=100 inc=10
"""

CONTEST = """
node p1 roles=proposer
node acme roles=supplier balance=1000
node d1 roles=consumer balance=100
node j1 roles=committee
node j2 roles=committee
at 1 advertise acme label=logo type=committee-custom dsale=8 deval=14 committee=j1,j2
at 2 bid d1 ad=logo content=draft
"""


def bundled(name, **kw):
    return run_scenario(parse_scenario(bundled_scenario(name)), **kw)


def balances(result, *ids):
    return tuple(result.market.state.balances[i] for i in ids)


def outcome(result, label):
    state = result.market.state
    return state.outcomes[state.ad_by_label(label).ad_id]


def winner_label(result, label):
    state = result.market.state
    return state.bids[outcome(result, label).winning_bid].label


# ---------------------------------------------------------------------------
# Bundled scenarios
# ---------------------------------------------------------------------------

def test_english_auction_with_escrow():
    result = bundled("ebay_english")

    assert result.report.ok, result.report.violations
    assert outcome(result, "lamp").block_number == 15
    assert winner_label(result, "lamp") == "alice#2"
    assert any(t.kind is TxKind.ESCROW_RELEASE for t in result.market.blocks[20].txs)
    assert balances(result, "seller", "alice", "bob") == (1_160, 1_840, 2_000)
    assert result.report.matching == {"lamp": MATCH}


def test_design_contest():
    result = bundled("logo_contest")

    assert result.report.ok, result.report.violations
    assert outcome(result, "logo").block_number == 16
    assert winner_label(result, "logo") == "d2#1"
    assert balances(result, "acme", "d1", "d2", "d3") == (500, 100, 600, 100)


def test_job_posting():
    result = bundled("job_posting")

    assert result.report.ok, result.report.violations
    assert outcome(result, "job").block_number == 12
    assert winner_label(result, "job") == "ben-cv"
    assert balances(result, "corp", "ann", "ben") == (500, 100, 100)


def test_dutch_file_scenario():
    result = run_scenario(parse_scenario(os.path.join(DATA, "dutch_tulips.scn")))

    assert result.report.ok, result.report.violations
    assert outcome(result, "tulips").block_number == 12
    assert balances(result, "grower", "florist") == (190, 410)


# ---------------------------------------------------------------------------
# Runs
# ---------------------------------------------------------------------------

def test_runs_are_deterministic():
    first, second = bundled("ebay_english"), bundled("ebay_english")
    assert first.trace.lines() == second.trace.lines()
    assert first.ledger == second.ledger
    assert first.report.determinism_digest == second.report.determinism_digest


def test_seed_changes_the_salt():
    scenario = parse_scenario(bundled_scenario("ebay_english"))
    first = run_scenario(scenario)
    second = run_scenario(replace(scenario, seed=43))
    assert first.report.determinism_digest != second.report.determinism_digest


def test_trace_content():
    result = bundled("job_posting")
    proposals = result.trace.of_kind(TraceKind.PROPOSE)

    assert str(proposals[0]).startswith("T1 PROPOSE B1 proposer=")
    assert len(proposals) == result.market.state.number
    assert result.trace.lines()[-1].endswith("AUDIT result pass")
    assert result.ledger[0].startswith("B0 ")


def test_no_bids_is_no_assignment():
    result = run_scenario(parse_text(AUCTION))

    assert result.report.ok
    assert not outcome(result, "lot").assigned
    assert outcome(result, "lot").block_number == 12
    assert result.market.is_quiescent()


def test_rejected_request_is_traced():
    result = run_scenario(parse_text(AUCTION + "at 3 bid alice ad=lot price=50\n"))

    rejections = result.trace.of_kind(TraceKind.REJECT)
    assert [str(r) for r in rejections] == ["T3 REJECT sender=alice kind=Bid rule=BelowStartingPrice"]
    assert result.report.ok


def test_scores_of_another_length_are_rejected():
    scores = "at 10 evaluate j1 ad=logo bid=d1#1 score=5,3\nat 11 evaluate j2 ad=logo bid=d1#1 score=7\n"
    result = run_scenario(parse_text(CONTEST + scores))

    rejections = [str(r) for r in result.trace.of_kind(TraceKind.REJECT)]
    assert rejections == ["T11 REJECT sender=j2 kind=Evaluation rule=ScoreDimensionMismatch"]
    assert result.report.ok, result.report.violations
    assert winner_label(result, "logo") == "d1#1"


def test_block_limit_stops_the_run():
    result = run_scenario(parse_text(AUCTION), max_blocks=5)
    assert result.market.state.number == 5
    assert result.report.matching == {"lot": "open"}


def test_block_cap_keeps_every_outcome():
    bids = "".join(f"at {3 + k} bid alice ad=lot price={100 + 10 * k} deposit=1\n" for k in range(4))
    result = run_scenario(parse_text("block-tx-cap 2\n" + AUCTION + bids))

    assert all(len(b.txs) <= 2 for b in result.market.blocks)
    assert outcome(result, "lot").assigned
    assert balances(result, "seller", "alice") == (1_130, 1_870)
    assert not result.market.state.locked


# ---------------------------------------------------------------------------
# Oracle
# ---------------------------------------------------------------------------

def test_oracle_detects_a_swapped_winner():
    result = run_scenario(parse_text(AUCTION + "at 3 bid alice ad=lot price=120\nat 4 bid bob ad=lot price=140\n"))
    blocks = list(result.market.blocks)
    loser = next(t for b in blocks for t in b.txs if t.kind is TxKind.BID and t.sender == "alice")

    for i, block in enumerate(blocks):
        txs = []
        for t in block.txs:
            if t.kind is TxKind.ASSIGNMENT:
                t = TransactionEnvelope.create(t.sender, t.kind, replace(t.payload, winning_bid=loser.tx_id),
                                               t.funds, t.nonce)
            txs.append(t)
        blocks[i] = replace(block, txs=tuple(txs))

    verdicts = audit_oracle(blocks, result.market.ctx.plugins.names())
    assert [v.status for v in verdicts] == [MISMATCH]
    assert verdicts[0].failed


@pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
def test_random_auctions_match_the_oracle(seed):
    scenario = random_english_scenario(seed)
    report = run_scenario(scenario).report
    assert report.ok, report.violations
    assert report.matching == {"lot": MATCH}


def test_small_campaign():
    campaign = oracle_campaign(50, seed=11)
    assert campaign.count == 50
    assert campaign.ok, campaign.violations[:5]
    assert campaign.matched == 50


def test_full_campaign():
    start = time.perf_counter()
    campaign = oracle_campaign(1000, seed=0)
    elapsed = time.perf_counter() - start

    assert campaign.count == 1000
    assert campaign.ok, campaign.violations[:5]
    assert campaign.matched == 1000
    assert elapsed < 30
