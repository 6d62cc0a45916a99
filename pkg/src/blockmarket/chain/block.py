"""
Filename: block.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Digest-linked blocks of the simulated chain.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from dataclasses import dataclass
from typing import Iterable, Tuple

from .codec import DIGEST_SIZE, digest, encode
from .tx import Roster, TransactionEnvelope

GENESIS_PARENT = bytes(DIGEST_SIZE)


@dataclass(frozen=True)
class Block:
    """An ordered list of transactions linked to its parent by digest."""
    number: int
    parent_digest: bytes
    digest: bytes
    proposer: str
    txs: Tuple[TransactionEnvelope, ...]

    @staticmethod
    def compute_digest(number: int,
                       parent_digest: bytes,
                       txs: Iterable[TransactionEnvelope]) -> bytes:
        """Digest over (number, parent digest, canonical transaction list).

        :param number: block number
        :param parent_digest: digest of the previous block
        :param txs: transactions in block order
        :return: 32-byte digest
        """
        return digest(encode((number, parent_digest, tuple(tx.encoded for tx in txs))))

    @classmethod
    def build(cls,
              number: int,
              parent_digest: bytes,
              proposer: str,
              txs: Iterable[TransactionEnvelope]) -> "Block":
        txs = tuple(txs)
        return cls(number, parent_digest, cls.compute_digest(number, parent_digest, txs), proposer, txs)

    def verify_digest(self) -> bool:
        return self.digest == self.compute_digest(self.number, self.parent_digest, self.txs)

    @property
    def hex(self) -> str:
        return self.digest.hex()


def genesis(roster: Roster) -> Block:
    """Fixed genesis block with no transactions.

    :param roster: node roster
    :return: block 0
    """
    return Block.build(0, GENESIS_PARENT, roster.proposer_for(0), ())
