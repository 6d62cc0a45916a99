"""
Filename: actions.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Transitions of an escrow case. Each action checks its preconditions,
    raising ValidationFailed, and returns the next case value together with
    the fund movements it causes. Validation calls them to check a
    transaction, block application calls them to apply it.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from typing import List, Tuple

from ..chain.error import Rule, Stage, ValidationFailed
from ..market.types import Component
from .case import EscrowCase, EscrowState

# (lock id, component, recipient)
Movement = Tuple[bytes, Component, str]


def _fail(rule: Rule, case: EscrowCase, detail: str = "") -> ValidationFailed:
    return ValidationFailed(Stage.PLATFORM, rule, detail or case.ad_id.hex()[:8])


def raise_arbitration(case: EscrowCase, party: str) -> EscrowCase:
    """Move a case into dispute. The safety-window release no longer applies.

    :param case: open case
    :param party: supplier or winner raising the request
    :return: the disputed case
    """
    if not case.is_party(party):
        raise _fail(Rule.NOT_A_PARTY, case, party)
    if not case.state.releasable:
        raise _fail(Rule.CASE_CLOSED, case, case.state.value)

    return case.with_state(EscrowState.DISPUTED)


def resolve_dispute(case: EscrowCase, sender: str, refundee: str) -> Tuple[EscrowCase, List[Movement]]:
    """Settle a disputed case: held payments go to the refundee and deposits
    go back to their owners.

    :param case: disputed case
    :param sender: must be the case's escrow identity
    :param refundee: supplier or winner
    :return: resolved case and movements
    """
    if sender != case.escrow_id:
        raise _fail(Rule.NOT_ESCROW, case, sender)
    if case.state is not EscrowState.DISPUTED:
        raise _fail(Rule.NOT_DISPUTED, case, case.state.value)
    if not case.is_party(refundee):
        raise _fail(Rule.NOT_A_PARTY, case, refundee)

    moves = [
        (h.lock_id, h.component, refundee if h.component is Component.PAYMENT else h.owner)
        for h in case.holdings
    ]

    return case.with_state(EscrowState.RESOLVED), moves


def release_after_safety_window(case: EscrowCase, current_block: int) -> Tuple[EscrowCase, List[Movement]]:
    """Release an undisputed case once its safety window has elapsed.

    :param case: open case
    :param current_block: block in which the release is applied
    :return: released case and movements
    """
    if not case.state.releasable:
        raise _fail(Rule.CASE_CLOSED, case, case.state.value)
    if current_block < case.release_block:
        raise _fail(Rule.SAFETY_WINDOW_OPEN, case, f"block {current_block} < {case.release_block}")

    return case.with_state(EscrowState.RELEASED), [(h.lock_id, h.component, h.payee) for h in case.holdings]


def record_delivery(case: EscrowCase, sender: str) -> EscrowCase:
    """Informational Open -> DeliveryRecorded transition.

    :param case: open case
    :param sender: supplier or escrow
    :return: the updated case
    """
    if sender not in (case.supplier, case.escrow_id):
        raise _fail(Rule.NOT_A_PARTY, case, sender)
    if case.state is not EscrowState.OPEN:
        raise _fail(Rule.CASE_CLOSED, case, case.state.value)

    return case.with_state(EscrowState.DELIVERY_RECORDED)
