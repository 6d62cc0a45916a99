"""
Filename: base.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    This file defines the engine configuration shared by a run.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from ..chain.codec import DIGEST_NAME
from ..defaults import SCORE_SCALE, Market
from .error import BadEngineConfiguration


class EngineConfig:
    """Representation of the configuration a marketplace engine requires to run.
    """
    block_tx_cap: int
    digest: str
    score_scale: int
    min_salt_bytes: int
    require_bid_deposit: bool
    safety_window: int
    max_blocks: int

    def __init__(self, data: dict):
        """Create a new configuration from parsed TOML data

        :param data: mapping of the TOML sections
        """
        required = {
            "chain": ["block_tx_cap", "digest"],
            "market": ["score_scale", "min_salt_bytes", "require_bid_deposit"],
            "escrow": ["safety_window"],
            "harness": ["max_blocks"],
        }

        missing_sections = [s for s in required if s not in data]
        if missing_sections:
            raise BadEngineConfiguration(f"sections {['[' + s + ']' for s in required]}",
                                         f"missing: {missing_sections}")

        for section, keys in required.items():
            missing = [k for k in keys if k not in data[section]]
            if missing:
                raise BadEngineConfiguration(f"{section} fields {keys}", f"missing: {missing}")

        chain = data["chain"]
        market = data["market"]

        self.block_tx_cap = int(chain["block_tx_cap"])
        self.digest = str(chain["digest"])
        self.score_scale = int(market["score_scale"])
        self.min_salt_bytes = int(market["min_salt_bytes"])
        self.require_bid_deposit = bool(market["require_bid_deposit"])
        self.safety_window = int(data["escrow"]["safety_window"])
        self.max_blocks = int(data["harness"]["max_blocks"])

        if self.digest != DIGEST_NAME:
            raise BadEngineConfiguration(f"digest = \"{DIGEST_NAME}\"", self.digest)
        if self.score_scale != SCORE_SCALE:
            raise BadEngineConfiguration(f"score_scale = {SCORE_SCALE}", self.score_scale)
        if self.block_tx_cap < 0:
            raise BadEngineConfiguration("block_tx_cap >= 0", self.block_tx_cap)
        if self.min_salt_bytes < 16:
            raise BadEngineConfiguration("min_salt_bytes >= 16", self.min_salt_bytes)
        if self.safety_window <= 0:
            raise BadEngineConfiguration("safety_window > 0", self.safety_window)
        if self.max_blocks <= 0:
            raise BadEngineConfiguration("max_blocks > 0", self.max_blocks)

    @classmethod
    def default(cls) -> "EngineConfig":
        """Configuration built from the in-code fallbacks."""
        market = Market()
        return cls({
            "chain": {"block_tx_cap": market.block_tx_cap, "digest": market.digest},
            "market": {"score_scale": SCORE_SCALE,
                       "min_salt_bytes": market.min_salt_bytes,
                       "require_bid_deposit": market.require_bid_deposit},
            "escrow": {"safety_window": market.safety_window},
            "harness": {"max_blocks": market.max_blocks},
        })
