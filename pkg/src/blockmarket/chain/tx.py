"""
Filename: tx.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    This file defines identities, the roster, funds attachments and the
    transaction envelope that carries every marketplace action.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple

from .codec import digest, encode
from .error import BadRoster


class Role(Enum):
    """Roles a node may play. A node plays one or more roles."""
    SUPPLIER = "supplier"
    CONSUMER = "consumer"
    PROPOSER = "proposer"
    COMMITTEE = "committee"
    ESCROW = "escrow"
    VALIDATOR = "validator"


@dataclass(frozen=True)
class Identity:
    """A simulated node identity. Sender identity is trusted in simulation."""
    id: str
    roles: FrozenSet[Role]

    def __post_init__(self):
        if not self.id:
            raise BadRoster("identity with empty id")

    def has(self, role: Role) -> bool:
        return role in self.roles


class Roster:
    """Ordered set of identities taking part in a run. Roster order fixes
    the order in which node effects are merged and the round-robin order of
    block proposers.
    """

    def __init__(self, identities: Iterable[Identity]):
        self.identities: Tuple[Identity, ...] = tuple(identities)
        self.__by_id: Dict[str, Identity] = {}

        for ident in self.identities:
            if ident.id in self.__by_id:
                raise BadRoster(f"duplicate identity {ident.id}")
            self.__by_id[ident.id] = ident

        self.proposers: Tuple[str, ...] = tuple(
            i.id for i in self.identities if i.has(Role.PROPOSER)
        )

        if not self.proposers:
            raise BadRoster("at least one proposer is required")

    def __contains__(self, node_id: str) -> bool:
        return node_id in self.__by_id

    def __iter__(self):
        return iter(self.identities)

    def __len__(self) -> int:
        return len(self.identities)

    @property
    def ids(self) -> List[str]:
        return [i.id for i in self.identities]

    def get(self, node_id: str) -> Identity:
        return self.__by_id[node_id]

    def has_role(self, node_id: str, role: Role) -> bool:
        ident = self.__by_id.get(node_id)
        return ident is not None and ident.has(role)

    def with_role(self, role: Role) -> List[Identity]:
        return [i for i in self.identities if i.has(role)]

    def proposer_for(self, number: int) -> str:
        """Round-robin proposer of block `number`.

        :param number: block number
        :return: identity id of the proposer
        """
        return self.proposers[number % len(self.proposers)]


@dataclass(frozen=True)
class FundsAttachment:
    """Payment and deposit attached to a transaction, in integer units."""
    payment: Optional[int] = None
    deposit: Optional[int] = None

    def __post_init__(self):
        for name in ("payment", "deposit"):
            value = getattr(self, name)
            if value is not None and (not isinstance(value, int) or isinstance(value, bool) or value < 0):
                raise ValueError(f"FundsAttachment: {name} must be a non-negative integer, got {value!r}")

    @property
    def total(self) -> int:
        return (self.payment or 0) + (self.deposit or 0)

    @property
    def empty(self) -> bool:
        return self.total == 0


class TxKind(Enum):
    """Kinds of marketplace transactions."""
    ADVERTISEMENT = "ItemAdvertisement"
    BID = "Bid"
    REVELATION = "Revelation"
    EVALUATION = "Evaluation"
    ASSIGNMENT = "Assignment"
    NO_ASSIGNMENT = "NoAssignment"
    FUNDS_UNLOCK = "FundsUnlock"
    FUNDS_TRANSFER = "FundsTransfer"
    ARBITRATION_REQUEST = "ArbitrationRequest"
    DISPUTE_RESOLUTION = "DisputeResolution"
    ESCROW_RELEASE = "EscrowRelease"
    DELIVERY_RECORD = "DeliveryRecord"


# Created by block proposers while monitoring the chain, never by user requests
PROPOSER_KINDS: FrozenSet[TxKind] = frozenset({
    TxKind.ASSIGNMENT,
    TxKind.NO_ASSIGNMENT,
    TxKind.FUNDS_UNLOCK,
    TxKind.FUNDS_TRANSFER,
    TxKind.ESCROW_RELEASE,
})


@dataclass(frozen=True)
class TransactionEnvelope:
    """A marketplace action issued by an identity, with optional attached funds.

    The identifier is the digest of the canonical encoding of
    (sender, kind, payload, funds, nonce); use :meth:`create` to build one.
    """
    tx_id: bytes
    sender: str
    kind: TxKind
    payload: Any
    funds: FundsAttachment
    nonce: int
    encoded: bytes = field(repr=False, compare=False)

    @classmethod
    def create(cls,
               sender: str,
               kind: TxKind,
               payload: Any,
               funds: Optional[FundsAttachment] = None,
               nonce: int = 0) -> "TransactionEnvelope":
        """Build an envelope and compute its identifier.

        :param sender: identity id of the sender
        :param kind: transaction kind
        :param payload: kind-specific record
        :param funds: attached payment/deposit
        :param nonce: client nonce making repeated actions distinct
        :return: the envelope
        """
        funds = funds if funds is not None else FundsAttachment()
        encoded = encode((sender, kind, payload, funds, nonce))
        return cls(digest(encoded), sender, kind, payload, funds, nonce, encoded)

    @property
    def short_id(self) -> str:
        return self.tx_id.hex()[:8]

    @property
    def proposer_created(self) -> bool:
        return self.kind in PROPOSER_KINDS

    def __repr__(self):
        return f"{self.kind.value}:{self.short_id} from {self.sender}"
