"""
Filename: pool.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    FIFO pool of admitted user transactions and of proposer transactions
    deferred by the block size cap.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from typing import Iterable, List, Set

from .tx import TransactionEnvelope


class TxPool:
    """Pending user transactions and carried-over proposer transactions,
    each kept in admission order. A transaction id appears at most once.
    """

    def __init__(self):
        self.pending: List[TransactionEnvelope] = []
        self.carry_over: List[TransactionEnvelope] = []
        self.__ids: Set[bytes] = set()

    def __contains__(self, tx_id: bytes) -> bool:
        return tx_id in self.__ids

    def __len__(self) -> int:
        return len(self.pending) + len(self.carry_over)

    def admit(self, tx: TransactionEnvelope) -> bool:
        """Append a user transaction.

        :param tx: transaction
        :return: False if its id is already pooled
        """
        if tx.tx_id in self.__ids:
            return False

        self.pending.append(tx)
        self.__ids.add(tx.tx_id)
        return True

    def take_carry_over(self) -> List[TransactionEnvelope]:
        taken, self.carry_over = self.carry_over, []
        self.__forget(taken)
        return taken

    def take_pending(self) -> List[TransactionEnvelope]:
        taken, self.pending = self.pending, []
        self.__forget(taken)
        return taken

    def defer(self, txs: Iterable[TransactionEnvelope]):
        """Append proposer transactions that did not fit in a block."""
        for tx in txs:
            self.carry_over.append(tx)
            self.__ids.add(tx.tx_id)

    def requeue(self, txs: Iterable[TransactionEnvelope]):
        """Put user transactions that did not fit back at the head of the queue."""
        txs = list(txs)
        self.pending = txs + self.pending
        self.__ids.update(tx.tx_id for tx in txs)

    def __forget(self, txs: Iterable[TransactionEnvelope]):
        for tx in txs:
            self.__ids.discard(tx.tx_id)
