"""
Filename: scenario.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Scenario files: a line-oriented description of the node roster, the
    user events to deliver at given blocks and the run options.

        seed 42
        max-blocks 40
        node p1 roles=proposer balance=0
        node alice roles=consumer balance=2000 interest=lamp
        at 1 advertise seller label=lamp type=english dsale=10 stprice=100 inc=10
        at 3 bid alice ad=lamp price=120 content="first offer"

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import re
import shlex

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Optional, Set, Tuple

from ..chain.codec import INT_MAX, INT_MIN
from ..chain.error import BadRoster, Rule
from ..chain.tx import Identity, Role, Roster
from ..market.error import BadFixedPoint
from ..market.types import ItemAdvertisement, TradeType, to_fixed_vector
from ..roles.node import NodeProfile
from ..roles.user import (
    AdvertiseRequest,
    BidRequest,
    DeliverRequest,
    DisputeRequest,
    EvaluateRequest,
    ResolveRequest,
)
from ..sys.factories.plugins import PluginFactory
from .error import BadParameter, ParseError, UnknownActor

ROLE_NAMES = {r.value: r for r in Role}
TYPE_NAMES = {t.value: t for t in TradeType}
FAULTS = {"withholdReveal"}
# block numbers and durations; deadlines are sums of a few of them
BLOCK_MAX = 2 ** 31 - 1
DURATIONS = {"dsale", "dbid", "dreveal", "deval", "safety"}

# Advertisement rule -> scenario parameter that fixes it
RULE_PARAMETERS = {
    Rule.BAD_DURATION: "duration",
    Rule.MISSING_REVEAL_HASH: "reserve",
    Rule.MISSING_REVEAL_DURATION: "dreveal",
    Rule.REVEAL_AND_COMMITTEE: "revflag",
    Rule.MISSING_COMMITTEE: "committee",
    Rule.UNEXPECTED_COMMITTEE: "committee",
    Rule.EVAL_NOT_AFTER_SALE: "deval",
    Rule.MISSING_START_PRICE: "stprice",
    Rule.MISSING_INCREMENT: "inc",
    Rule.MISSING_BID_DURATION: "dbid",
    Rule.BAD_WEIGHTS: "weights",
}

ACTION_KEYS = {
    "advertise": ({"label", "type", "dsale", "reserve", "stprice", "dbid", "dreveal", "deval", "inc",
                   "payment", "deposit", "committee", "item", "dim", "weights", "safety"},
                  {"revflag", "physical"}),
    "bid": ({"ad", "price", "deposit", "content", "label"}, set()),
    "evaluate": ({"ad", "decision", "bid", "score"}, set()),
    "dispute": ({"ad"}, set()),
    "resolve": ({"ad", "refund"}, set()),
    "deliver": ({"ad"}, set()),
}

_COMMENT = re.compile(r"(^|\s)#.*$")


@dataclass(frozen=True)
class NodeDecl:
    id: str
    roles: FrozenSet[Role]
    balance: int = 0
    interest: Tuple[str, ...] = ()
    withhold_reveal: bool = False
    line: int = 0


@dataclass(frozen=True)
class ScenarioEvent:
    at: int
    actor: str
    request: Any
    line: int = 0


@dataclass
class Scenario:
    """A parsed scenario. Events are sorted by block, file order within a block."""
    seed: int = 0
    nodes: List[NodeDecl] = field(default_factory=list)
    events: List[ScenarioEvent] = field(default_factory=list)
    plugins: Dict[str, str] = field(default_factory=dict)
    max_blocks: Optional[int] = None
    block_tx_cap: Optional[int] = None
    require_bid_deposit: Optional[bool] = None
    name: str = "scenario"

    def roster(self) -> Roster:
        return Roster(Identity(n.id, n.roles) for n in self.nodes)

    def allocation(self) -> Dict[str, int]:
        return {n.id: n.balance for n in self.nodes}

    def profiles(self) -> Dict[str, NodeProfile]:
        return {n.id: NodeProfile(n.interest, n.withhold_reveal) for n in self.nodes}

    def events_at(self) -> Dict[int, List[ScenarioEvent]]:
        grouped: Dict[int, List[ScenarioEvent]] = {}
        for ev in self.events:
            grouped.setdefault(ev.at, []).append(ev)
        return grouped

    @property
    def last_event_block(self) -> int:
        return max((ev.at for ev in self.events), default=0)


def _int(value: str, line: int, name: str, minimum: int = 0, maximum: int = INT_MAX) -> int:
    try:
        number = int(value)
    except ValueError:
        raise BadParameter(line, name, f"not an integer: {value!r}")

    if not minimum <= number <= maximum:
        raise BadParameter(line, name, f"out of range: {number}")

    return number


def _ids(value: str) -> Tuple[str, ...]:
    return tuple(v for v in value.split(",") if v)


class _Parser:

    def __init__(self, name: str):
        self.scenario = Scenario(name=name)
        self.__node_ids: Set[str] = set()
        # advertisement label -> bid labels
        self.__ads: Dict[str, Set[str]] = {}
        self.__bid_counts: Dict[Tuple[str, str], int] = {}
        # (line, referenced node) checked once every node is declared
        self.__references: List[Tuple[int, str]] = []
        self.__actions = {
            "advertise": self.__advertise,
            "bid": self.__bid,
            "evaluate": self.__evaluate,
            "dispute": self.__dispute,
            "resolve": self.__resolve,
            "deliver": self.__deliver,
        }

    def feed(self, line: int, raw: str):
        text = _COMMENT.sub("", raw).strip()
        if not text:
            return

        try:
            tokens = shlex.split(text)
        except ValueError as e:
            raise ParseError(line, str(e))

        head, args = tokens[0], tokens[1:]

        if head == "seed":
            self.scenario.seed = _int(self.__single(args, line, head), line, head, 0, 2 ** 64 - 1)
        elif head == "max-blocks":
            self.scenario.max_blocks = _int(self.__single(args, line, head), line, head, 1, BLOCK_MAX)
        elif head == "block-tx-cap":
            self.scenario.block_tx_cap = _int(self.__single(args, line, head), line, head, 0)
        elif head == "require-bid-deposit":
            if args and args[0] not in ("true", "false"):
                raise BadParameter(line, head, f"expected true or false, got {args[0]!r}")
            self.scenario.require_bid_deposit = not args or args[0] == "true"
        elif head == "plugin":
            self.__plugin(args, line)
        elif head == "node":
            self.__node(args, line)
        elif head == "at":
            self.__event(args, line)
        else:
            raise ParseError(line, f"unknown directive '{head}'")

    def finish(self) -> Scenario:
        for line, node_id in self.__references:
            if node_id not in self.__node_ids:
                raise UnknownActor(line, node_id)

        try:
            self.scenario.roster()
        except BadRoster as e:
            raise ParseError(0, e.message)

        self.scenario.events.sort(key=lambda ev: ev.at)

        return self.scenario

    @staticmethod
    def __single(args: List[str], line: int, name: str) -> str:
        if len(args) != 1:
            raise BadParameter(line, name, "expected exactly one value")
        return args[0]

    @staticmethod
    def __options(args: List[str], line: int, keys: Set[str], flags: Set[str]) -> Dict[str, str]:
        options: Dict[str, str] = {}

        for token in args:
            key, sep, value = token.partition("=")
            if not sep:
                if token not in flags:
                    raise BadParameter(line, token, "unexpected token")
                options[token] = "true"
                continue
            if key not in keys:
                raise BadParameter(line, key, "unknown parameter")
            if key in options:
                raise BadParameter(line, key, "given twice")
            options[key] = value

        return options

    def __plugin(self, args: List[str], line: int):
        if len(args) != 2:
            raise ParseError(line, "expected: plugin <trade-type> <plugin-name>")

        trade_type, name = args
        if trade_type not in TYPE_NAMES:
            raise BadParameter(line, "trade-type", f"unknown trade type '{trade_type}'")
        if name not in PluginFactory.available():
            raise BadParameter(line, "plugin", f"unknown plug-in '{name}'")

        self.scenario.plugins[trade_type] = name

    def __node(self, args: List[str], line: int):
        if not args:
            raise ParseError(line, "expected: node <id> roles=<r1,...> balance=<units>")

        node_id = args[0]
        if node_id in self.__node_ids:
            raise BadParameter(line, "id", f"node '{node_id}' declared twice")

        opts = self.__options(args[1:], line, {"roles", "balance", "interest", "fault"}, set())

        if "roles" not in opts:
            raise BadParameter(line, "roles", "required")

        roles = set()
        for name in _ids(opts["roles"]):
            if name not in ROLE_NAMES:
                raise BadParameter(line, "roles", f"unknown role '{name}'")
            roles.add(ROLE_NAMES[name])

        faults = set(_ids(opts.get("fault", "")))
        if faults - FAULTS:
            raise BadParameter(line, "fault", f"unknown fault(s) {sorted(faults - FAULTS)}")

        balance = _int(opts.get("balance", "0"), line, "balance")
        if balance + sum(n.balance for n in self.scenario.nodes) > INT_MAX:
            raise BadParameter(line, "balance", "total allocation out of range")

        self.__node_ids.add(node_id)
        self.scenario.nodes.append(NodeDecl(
            id=node_id,
            roles=frozenset(roles),
            balance=balance,
            interest=_ids(opts.get("interest", "")),
            withhold_reveal="withholdReveal" in faults,
            line=line,
        ))

    def __event(self, args: List[str], line: int):
        if len(args) < 3:
            raise ParseError(line, "expected: at <block> <action> <node> ...")

        at = _int(args[0], line, "block", 1, BLOCK_MAX)
        action, actor = args[1], args[2]

        if action not in ACTION_KEYS:
            raise ParseError(line, f"unknown action '{action}'")

        keys, flags = ACTION_KEYS[action]
        opts = self.__options(args[3:], line, keys, flags)
        self.__references.append((line, actor))

        request = self.__actions[action](opts, line, actor)
        self.scenario.events.append(ScenarioEvent(at, actor, request, line))

    def __ad_label(self, opts: Dict[str, str], line: int) -> str:
        label = opts.get("ad")
        if label is None:
            raise BadParameter(line, "ad", "required")
        if label not in self.__ads:
            raise BadParameter(line, "ad", f"unknown advertisement '{label}'")
        return label

    def __bid_label(self, ad: str, label: str, line: int, name: str) -> str:
        if label not in self.__ads[ad]:
            raise BadParameter(line, name, f"unknown bid '{label}' on '{ad}'")
        return label

    def __advertise(self, opts: Dict[str, str], line: int, actor: str) -> AdvertiseRequest:
        for required in ("label", "type", "dsale"):
            if required not in opts:
                raise BadParameter(line, required, "required")

        label = opts["label"]
        if label in self.__ads:
            raise BadParameter(line, "label", f"advertisement '{label}' declared twice")
        if opts["type"] not in TYPE_NAMES:
            raise BadParameter(line, "type", f"unknown trade type '{opts['type']}'")

        def number(key: str, minimum: int = 0) -> Optional[int]:
            maximum = BLOCK_MAX if key in DURATIONS else INT_MAX
            return _int(opts[key], line, key, minimum, maximum) if key in opts else None

        committee = _ids(opts["committee"]) if "committee" in opts else None
        for member in committee or ():
            self.__references.append((line, member))

        weights = None
        if "weights" in opts:
            weights = tuple(_int(w, line, "weights", INT_MIN) for w in _ids(opts["weights"]))

        req = AdvertiseRequest(
            label=label,
            trade_type=TYPE_NAMES[opts["type"]],
            sale_duration=number("dsale", 1),
            reveal_flag="revflag" in opts,
            reserve=number("reserve"),
            start_price=number("stprice"),
            bid_duration=number("dbid", 1),
            reveal_duration=number("dreveal", 1),
            eval_duration=number("deval", 1),
            bid_increment=number("inc", 1),
            payment=number("payment"),
            deposit=number("deposit"),
            committee=committee,
            physical="physical" in opts,
            item=opts.get("item", ""),
            score_dim=number("dim", 1),
            weights=weights,
            safety_window=number("safety", 1),
        )

        if req.reveal_flag and req.reserve is None:
            raise BadParameter(line, "reserve", "required with revflag")

        preview = ItemAdvertisement(
            label=req.label, item=b"", trade_type=req.trade_type, sale_duration=req.sale_duration,
            reveal_flag=req.reveal_flag, start_price=req.start_price, bid_duration=req.bid_duration,
            reveal_duration=req.reveal_duration, eval_duration=req.eval_duration,
            bid_increment=req.bid_increment, reserve_hash=bytes(32) if req.reveal_flag else None,
            committee=req.committee, score_dim=req.score_dim, weights=req.weights,
        )
        violation = preview.violation()
        if violation is not None:
            raise BadParameter(line, RULE_PARAMETERS.get(violation, violation.value), violation.value)

        self.__ads[label] = set()
        return req

    def __bid(self, opts: Dict[str, str], line: int, actor: str) -> BidRequest:
        ad = self.__ad_label(opts, line)

        if "label" in opts:
            label = opts["label"]
        else:
            count = self.__bid_counts.get((ad, actor), 0) + 1
            self.__bid_counts[(ad, actor)] = count
            label = f"{actor}#{count}"

        if label in self.__ads[ad]:
            raise BadParameter(line, "label", f"bid '{label}' declared twice on '{ad}'")
        self.__ads[ad].add(label)

        return BidRequest(
            ad_label=ad,
            content=opts.get("content", ""),
            price=_int(opts["price"], line, "price") if "price" in opts else None,
            deposit=_int(opts["deposit"], line, "deposit") if "deposit" in opts else None,
            label=label,
        )

    def __evaluate(self, opts: Dict[str, str], line: int, actor: str) -> EvaluateRequest:
        ad = self.__ad_label(opts, line)

        if "decision" in opts:
            if "bid" in opts or "score" in opts:
                raise BadParameter(line, "decision", "cannot be combined with bid/score")
            return EvaluateRequest(ad, decision=self.__bid_label(ad, opts["decision"], line, "decision"))

        if "bid" not in opts or "score" not in opts:
            raise BadParameter(line, "score", "expected decision=<bid> or bid=<bid> score=<v1,...>")

        try:
            score = to_fixed_vector(opts["score"])
        except BadFixedPoint as e:
            raise BadParameter(line, "score", e.message)
        if not score:
            raise BadParameter(line, "score", "empty score vector")
        if any(not INT_MIN <= v <= INT_MAX for v in score):
            raise BadParameter(line, "score", f"out of range: {opts['score']}")

        return EvaluateRequest(ad, bid_label=self.__bid_label(ad, opts["bid"], line, "bid"), score=score)

    def __dispute(self, opts: Dict[str, str], line: int, actor: str) -> DisputeRequest:
        return DisputeRequest(self.__ad_label(opts, line))

    def __resolve(self, opts: Dict[str, str], line: int, actor: str) -> ResolveRequest:
        if "refund" not in opts:
            raise BadParameter(line, "refund", "required")
        self.__references.append((line, opts["refund"]))
        return ResolveRequest(self.__ad_label(opts, line), opts["refund"])

    def __deliver(self, opts: Dict[str, str], line: int, actor: str) -> DeliverRequest:
        return DeliverRequest(self.__ad_label(opts, line))


def parse_text(text: str, name: str = "scenario") -> Scenario:
    """Parse scenario text.

    :param text: scenario source
    :param name: name reported in traces
    :return: the scenario
    """
    parser = _Parser(name)
    for line, raw in enumerate(text.splitlines(), start=1):
        parser.feed(line, raw)

    return parser.finish()


def parse_scenario(path) -> Scenario:
    """Parse a scenario file.

    :param path: path to a UTF-8 scenario file
    :return: the scenario
    """
    path = Path(path)
    return parse_text(path.read_text(encoding="utf-8"), path.stem)


def bundled_scenario(name: str) -> Path:
    """Path of a scenario shipped with the package, e.g. `ebay_english`."""
    return Path(str(resources.files("blockmarket.harness").joinpath("scenarios", f"{name}.scn")))


def bundled_names() -> List[str]:
    folder = resources.files("blockmarket.harness").joinpath("scenarios")
    return sorted(Path(str(p)).stem for p in folder.iterdir() if str(p).endswith(".scn"))
