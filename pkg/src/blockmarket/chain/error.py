"""
Filename: error.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    This file defines ledger-level error types and the validation rules that
    the three-stage transaction validation pipeline can report.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from enum import Enum


class Stage(Enum):
    """Stage of the validation pipeline that rejected a transaction."""
    CHAIN = "chain"
    PLATFORM = "platform"
    USE_CASE = "use-case"


class Rule(Enum):
    """Individual validation rules. Values are the names surfaced in traces."""
    # Chain level
    UNKNOWN_SENDER = "UnknownSender"
    INSUFFICIENT_BALANCE = "InsufficientBalance"
    MALFORMED = "Malformed"
    NOT_PROPOSER = "NotProposer"
    DUPLICATE_TX = "DuplicateTx"

    # Advertisement
    MISSING_REVEAL_HASH = "MissingRevealHash"
    MISSING_REVEAL_DURATION = "MissingRevealDuration"
    MISSING_COMMITTEE = "MissingCommittee"
    EVAL_NOT_AFTER_SALE = "EvalNotAfterSale"
    MISSING_START_PRICE = "MissingStartPrice"
    MISSING_INCREMENT = "MissingIncrement"
    MISSING_BID_DURATION = "MissingBidDuration"
    REVEAL_AND_COMMITTEE = "RevealAndCommittee"
    UNEXPECTED_COMMITTEE = "UnexpectedCommittee"
    BAD_DURATION = "BadDuration"
    BAD_WEIGHTS = "BadWeights"
    NO_ESCROW_CONFIGURED = "NoEscrowConfigured"
    NOT_SUPPLIER = "NotSupplier"
    NOT_CONSUMER = "NotConsumer"

    # Bidding
    UNKNOWN_ADVERTISEMENT = "UnknownAdvertisement"
    SALE_NOT_OPEN = "SaleNotOpen"
    SALE_CLOSED = "SaleClosed"
    MISSING_PAYMENT = "MissingPayment"
    BELOW_STARTING_PRICE = "BelowStartingPrice"
    INCREMENT_VIOLATION = "IncrementViolation"
    WRONG_WINDOW_PRICE = "WrongWindowPrice"
    MISSING_DEPOSIT = "MissingDeposit"
    EMPTY_CONTENT = "EmptyContent"

    # Revelation
    NOT_A_REVEAL_TRADE = "NotARevealTrade"
    REVEAL_WINDOW_CLOSED = "RevealWindowClosed"
    HASH_MISMATCH = "HashMismatch"
    SALT_TOO_SHORT = "SaltTooShort"

    # Evaluation
    NOT_A_COMMITTEE_TRADE = "NotACommitteeTrade"
    NOT_IN_COMMITTEE = "NotInCommittee"
    EVAL_WINDOW_CLOSED = "EvalWindowClosed"
    WRONG_EVALUATION_FORM = "WrongEvaluationForm"
    UNKNOWN_BID = "UnknownBid"
    SCORE_DIMENSION_MISMATCH = "ScoreDimensionMismatch"
    DUPLICATE_EVALUATION = "DuplicateEvaluation"

    # Matching and funds
    DUPLICATE_OUTCOME = "DuplicateOutcome"
    NOT_MATCHED = "NotMatched"
    UNKNOWN_LOCK = "UnknownLock"
    LOCK_HELD_BY_ESCROW = "LockHeldByEscrow"

    # Escrow
    NO_ESCROW_CASE = "NoEscrowCase"
    NOT_A_PARTY = "NotAParty"
    CASE_CLOSED = "CaseClosed"
    NOT_ESCROW = "NotEscrow"
    NOT_DISPUTED = "NotDisputed"
    SAFETY_WINDOW_OPEN = "SafetyWindowOpen"

    # Use case
    CUSTOM_REJECTED = "CustomRejected"


class ValidationFailed(Exception):
    """Exception raised when a transaction fails validation.

    Attributes:
        stage -- pipeline stage that rejected the transaction
        rule -- rule that was violated
        message -- explanation of the error
    """

    def __init__(self, stage: Stage, rule: Rule, detail: str = ""):
        self.stage = stage
        self.rule = rule
        self.detail = detail
        self.message = f"Validation failed - stage: {stage.value}\trule: {rule.value}"
        if detail:
            self.message += f"\tdetail: {detail}"
        super().__init__(self.message)

    @property
    def reason(self) -> str:
        return self.rule.value


class InsufficientBalance(ValidationFailed):
    """Exception raised when a sender cannot cover the funds attached to a transaction.

    Attributes:
        message -- explanation of the error
    """

    def __init__(self, sender, required, available):
        super().__init__(Stage.CHAIN, Rule.INSUFFICIENT_BALANCE,
                         f"sender: {sender} required: {required} available: {available}")


class InvalidBlock(Exception):
    """Exception raised when a block does not extend the head or carries an invalid transaction.

    Attributes:
        message -- explanation of the error
    """

    def __init__(self, number, cause):
        self.number = number
        self.message = f"Invalid block - number: {number}\tcause: {cause}"
        super().__init__(self.message)


class BadRoster(Exception):
    """Exception raised when the node roster is not usable for a run.

    Attributes:
        message -- explanation of the error
    """

    def __init__(self, cause):
        self.message = f"Bad roster - cause: {cause}"
        super().__init__(self.message)


class NotCurrentProposer(Exception):
    """Exception raised when a node other than the next block proposer adds proposer transactions.

    Attributes:
        message -- explanation of the error
    """

    def __init__(self, caller, expected):
        self.message = f"Not the current proposer - caller: {caller}\texpected: {expected}"
        super().__init__(self.message)
