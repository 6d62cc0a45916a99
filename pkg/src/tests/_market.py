"""Ledger builders shared by the test suites.

Test-only helper. Rosters are written as keyword arguments mapping an
identity to a comma-separated role list, in roster order.
"""
from blockmarket.chain.block import Block
from blockmarket.chain.state import ChainState, apply_block
from blockmarket.chain.tx import FundsAttachment, Identity, Role, Roster, TransactionEnvelope, TxKind
from blockmarket.chain.validation import ValidationContext
from blockmarket.defaults import Policy
from blockmarket.market.types import BidPayload, ItemAdvertisement, TradeType
from blockmarket.policy.plugins import PolicyPlugins


def roster(**roles) -> Roster:
    return Roster(Identity(node_id, frozenset(Role(r) for r in roles_csv.split(",") if r))
                  for node_id, roles_csv in roles.items())


def market_roster() -> Roster:
    return roster(p1="proposer", p2="proposer", seller="supplier",
                  alice="consumer", bob="consumer", carol="consumer",
                  j1="committee", j2="committee", esc="escrow")


ALLOCATION = {"seller": 1_000, "alice": 2_000, "bob": 2_000, "carol": 2_000}


def context(r: Roster = None, **kw) -> ValidationContext:
    return ValidationContext(r or market_roster(), PolicyPlugins.from_names(Policy().bindings), **kw)


def genesis(ctx: ValidationContext, allocation=None) -> ChainState:
    return ChainState.genesis(ctx.roster, ALLOCATION if allocation is None else allocation)


_nonce = [0]


def tx(sender: str, kind: TxKind, payload, payment=None, deposit=None) -> TransactionEnvelope:
    _nonce[0] += 1
    return TransactionEnvelope.create(sender, kind, payload, FundsAttachment(payment, deposit), _nonce[0])


def english(label="lot", sale=10, start=100, inc=10, **kw) -> ItemAdvertisement:
    return ItemAdvertisement(label=label, item=label.encode(), trade_type=TradeType.ENGLISH,
                             sale_duration=sale, start_price=start, bid_increment=inc, **kw)


def dutch(label="tulips", sale=20, start=100, inc=10, window=5, **kw) -> ItemAdvertisement:
    return ItemAdvertisement(label=label, item=label.encode(), trade_type=TradeType.DUTCH,
                             sale_duration=sale, start_price=start, bid_increment=inc, bid_duration=window, **kw)


def bid(ad_tx: TransactionEnvelope, sender: str, price=None, deposit=None, content=b"", label="") -> TransactionEnvelope:
    return tx(sender, TxKind.BID, BidPayload(ad_tx.tx_id, content, label), price, deposit)


def block_for(state: ChainState, ctx: ValidationContext, *txs) -> Block:
    number = state.number + 1
    return Block.build(number, state.head, ctx.roster.proposer_for(number), txs)


def extend(state: ChainState, ctx: ValidationContext, *txs) -> ChainState:
    return apply_block(block_for(state, ctx, *txs), state, ctx)


def advance_to(state: ChainState, ctx: ValidationContext, number: int) -> ChainState:
    """Apply empty blocks until the head is block `number`."""
    while state.number < number:
        state = extend(state, ctx)
    return state


def committee_ad(**kw) -> ItemAdvertisement:
    fields = dict(label="logo", item=b"logo", trade_type=TradeType.COMMITTEE_CUSTOM, sale_duration=8,
                  eval_duration=14, committee=("j1", "j2"), score_dim=3, weights=(3, 2, 1))
    fields.update(kw)
    return ItemAdvertisement(**fields)
