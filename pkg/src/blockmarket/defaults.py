"""
Filename: defaults.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    This file provides default values for system-level choices.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""

from dataclasses import dataclass, field
from typing import Dict

# Fixed-point scale of evaluation scores
SCORE_SCALE = 1_000_000


@dataclass
class Market:
    """In-code fallbacks used when no configuration file is given."""
    block_tx_cap: int = 0
    digest: str = "sha256"
    min_salt_bytes: int = 16
    require_bid_deposit: bool = False
    safety_window: int = 5
    max_blocks: int = 200


def _default_bindings() -> Dict[str, str]:
    return {
        "committee-custom": "weighted-sum-max",
        "custom": "max-scalar",
    }


@dataclass
class Policy:
    """Trade type name -> plug-in name used when a scenario binds nothing."""
    bindings: Dict[str, str] = field(default_factory=_default_bindings)
