"""
Filename: trace.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Run trace and ledger dump. Both are line-oriented with a fixed field
    order so that two runs of the same scenario can be compared with diff.

        T3 PROPOSE B3 proposer=p1 txs=2 digest=5e0c...
        T3 REJECT sender=bob kind=Bid rule=IncrementViolation
        T3 NOTIFY alice NewHighestBid ad=lamp value=140

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, List, Tuple

from ..chain.block import Block
from ..chain.error import ValidationFailed


class TraceKind(Enum):
    PROPOSE = "PROPOSE"
    REJECT = "REJECT"
    DROP = "DROP"
    NOTIFY = "NOTIFY"
    AUDIT = "AUDIT"


@dataclass(frozen=True)
class TraceEvent:
    tick: int
    kind: TraceKind
    fields: Tuple[str, ...] = ()

    def __str__(self):
        return " ".join((f"T{self.tick}", self.kind.value) + self.fields)


@dataclass
class Trace:
    events: List[TraceEvent] = field(default_factory=list)

    def record(self, tick: int, kind: TraceKind, *fields: str):
        self.events.append(TraceEvent(tick, kind, tuple(str(f) for f in fields)))

    def propose(self, tick: int, block: Block):
        self.record(tick, TraceKind.PROPOSE, f"B{block.number}", f"proposer={block.proposer}",
                    f"txs={len(block.txs)}", f"digest={block.hex}")

    def reject(self, tick: int, sender: str, kind: str, failure: ValidationFailed):
        self.record(tick, TraceKind.REJECT, f"sender={sender}", f"kind={kind}", f"rule={failure.reason}")

    def drop(self, tick: int, tx, failure: ValidationFailed):
        self.record(tick, TraceKind.DROP, f"{tx.kind.value}:{tx.short_id}", f"sender={tx.sender}",
                    f"rule={failure.reason}")

    def notify(self, tick: int, event):
        self.record(tick, TraceKind.NOTIFY, str(event))

    def audit(self, tick: int, name: str, detail: str):
        self.record(tick, TraceKind.AUDIT, name, detail)

    def of_kind(self, kind: TraceKind) -> List[TraceEvent]:
        return [e for e in self.events if e.kind is kind]

    def lines(self) -> List[str]:
        return [str(e) for e in self.events]

    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines())


def dump_ledger(blocks: Iterable[Block]) -> List[str]:
    """One line per block: `B<number> <digest-hex> <Kind>:<id8> ...`.

    :param blocks: blocks in chain order, genesis included
    :return: dump lines
    """
    lines = []
    for block in blocks:
        parts = [f"B{block.number}", block.hex]
        parts.extend(f"{tx.kind.value}:{tx.short_id}" for tx in block.txs)
        lines.append(" ".join(parts))

    return lines


def write_lines(path, lines: Iterable[str]):
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")
