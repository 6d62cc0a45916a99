"""
Filename: prf.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Pseudo-random tie-break among equally good bids. The index is derived
    from the digest of the block that triggered matching and the
    advertisement identifier, so every node selects the same bid.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from dataclasses import dataclass
from typing import Sequence, TypeVar

from ..chain.codec import digest
from .error import EmptyCandidates

T = TypeVar("T")


@dataclass(frozen=True)
class SeedMaterial:
    trigger_digest: bytes
    ad_id: bytes


def prf_index(seed: SeedMaterial, count: int) -> int:
    """Index in [0, count) from the first 8 digest bytes, big-endian.

    :param seed: trigger block digest and advertisement id
    :param count: number of candidates
    :return: selected index
    """
    word = int.from_bytes(digest(seed.trigger_digest + seed.ad_id)[:8], "big")
    return word % count


def pseudo_random_select(candidates: Sequence[T], seed: SeedMaterial) -> T:
    """Select one candidate. Candidates are put in canonical inclusion order first.

    :param candidates: bids carrying an `inclusion` (block, index) pair
    :param seed: seed material
    :return: the selected candidate
    """
    if not candidates:
        raise EmptyCandidates(seed.ad_id)

    ordered = sorted(candidates, key=lambda c: c.inclusion)

    return ordered[prf_index(seed, len(ordered))]
