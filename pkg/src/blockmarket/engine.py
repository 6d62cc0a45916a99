"""
Filename: engine.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    This file defines the marketplace engine: the simulated chain, one node
    per roster identity and the tick that moves them forward together.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import logging
import toml

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, List, Mapping, Optional, Tuple

from .chain.block import Block
from .chain.chain import Drop, SimChain
from .chain.error import ValidationFailed
from .chain.tx import Roster, TransactionEnvelope
from .chain.validation import ValidationContext
from .defaults import Policy
from .market.lifecycle import Phase
from .policy.plugins import CustomValidation, PolicyPlugins
from .roles.events import NotificationEvent
from .roles.node import Node, NodeProfile
from .sys.base import EngineConfig
from .sys.error import BadEngineConfiguration

if TYPE_CHECKING:
    from .harness.scenario import Scenario

logger = logging.getLogger(__name__)

# (sender, transaction kind, failure)
Rejection = Tuple[str, str, ValidationFailed]


@dataclass
class TickResult:
    """Everything one tick produced, in publication order."""
    block: Block
    drops: List[Drop] = field(default_factory=list)
    rejections: List[Rejection] = field(default_factory=list)
    notifications: List[NotificationEvent] = field(default_factory=list)
    invalid: List[str] = field(default_factory=list)


class Marketplace:
    """A `Marketplace` owns the simulated chain and every node of the roster.
    User requests enter through `submit`; `step` proposes the next block,
    lets every node process it and publishes the nodes' effects in roster
    order.
    """

    def __init__(self,
                 roster: Roster,
                 allocation: Mapping[str, int],
                 seed: int = 0,
                 filename: str = None,
                 config: EngineConfig = None,
                 plugins: Optional[PolicyPlugins] = None,
                 profiles: Optional[Mapping[str, NodeProfile]] = None,
                 block_tx_cap: Optional[int] = None,
                 require_bid_deposit: Optional[bool] = None):
        # Configuration precedence: explicit arguments, then the file, then in-code defaults
        if config is None:
            config = self.__from_file(filename) if filename is not None else EngineConfig.default()
        self.config = config

        if plugins is None:
            plugins = PolicyPlugins.from_names(Policy().bindings)

        cap = config.block_tx_cap if block_tx_cap is None else block_tx_cap
        deposit = config.require_bid_deposit if require_bid_deposit is None else require_bid_deposit

        self.roster = roster
        self.allocation = {i.id: int(allocation.get(i.id, 0)) for i in roster}
        self.seed = seed
        self.ctx = ValidationContext(roster, plugins, config.min_salt_bytes, deposit)
        self.chain = SimChain(self.ctx, self.allocation, cap)

        profiles = profiles or {}
        self.nodes: List[Node] = [
            Node(identity, index, self.ctx, self.allocation, seed,
                 profiles.get(identity.id), config.safety_window)
            for index, identity in enumerate(roster)
        ]
        self.__by_id: Dict[str, Node] = {n.id: n for n in self.nodes}

    @classmethod
    def from_scenario(cls,
                      scenario: "Scenario",
                      config: EngineConfig = None,
                      custom_validation: Optional[CustomValidation] = None) -> "Marketplace":
        """Build the engine a scenario describes.

        :param scenario: parsed scenario
        :param config: engine configuration; defaults when omitted
        :param custom_validation: optional use-case validation callback
        :return: a fresh engine at genesis
        """
        bindings = Policy().bindings
        bindings.update(scenario.plugins)

        return cls(
            scenario.roster(),
            scenario.allocation(),
            seed=scenario.seed,
            config=config,
            plugins=PolicyPlugins.from_names(bindings, custom_validation),
            profiles=scenario.profiles(),
            block_tx_cap=scenario.block_tx_cap,
            require_bid_deposit=scenario.require_bid_deposit,
        )

    @staticmethod
    def __from_file(filename: str) -> EngineConfig:
        try:
            data = toml.load(filename)
        except FileNotFoundError:
            raise BadEngineConfiguration("valid config file", f"file not found: {filename}")
        except toml.TomlDecodeError as e:
            raise BadEngineConfiguration("valid TOML", f"parse error in {filename}: {e}")

        return EngineConfig(data)

    @classmethod
    def load_config(cls, filename: str) -> EngineConfig:
        """Read and check an engine configuration file."""
        return cls.__from_file(filename)

    @property
    def state(self):
        return self.chain.state

    @property
    def blocks(self) -> Tuple[Block, ...]:
        return self.chain.blocks

    def node(self, node_id: str) -> Node:
        return self.__by_id[node_id]

    def submit(self, actor: str, request) -> TransactionEnvelope:
        """Deliver a user request to the acting node and broadcast the result.

        :param actor: identity of the requesting node
        :param request: user request record
        :return: the admitted transaction
        """
        tx = self.node(actor).submit(request)
        return self.chain.broadcast_tx(tx)

    def deliver(self, block: Block, result: TickResult):
        """Let every node process `block` and publish the effects in roster order."""
        for node in self.nodes:
            effects = node.process_block(block)

            if effects.invalid is not None:
                result.invalid.append(node.id)
                continue

            for tx in effects.proposer_txs:
                self.chain.add_tx_to_prop_block(node.id, tx)

            for tx in effects.user_txs:
                try:
                    self.chain.broadcast_tx(tx)
                except ValidationFailed as e:
                    logger.info("%s: rejected %r: %s", node.id, tx, e.reason)
                    result.rejections.append((tx.sender, tx.kind.value, e))

            result.notifications.extend(effects.notifications)

    def step(self) -> TickResult:
        """Advance the simulation by one block.

        :return: the block and the effects it caused
        """
        block = self.chain.propose_next_block()
        result = TickResult(block, drops=list(self.chain.last_drops))
        self.deliver(block, result)

        return result

    def is_quiescent(self) -> bool:
        """No pooled transaction is left and every trade is settled."""
        if not self.chain.idle:
            return False

        return all(lc.phase is Phase.SETTLED for lc in self.chain.state.lifecycles.values())
