"""
Filename: commit.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Salted hash commitment of a supplier's secret reserve price, and its
    verification against a revelation.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
from ..chain.codec import digest, encode_int
from ..chain.error import Rule, Stage, ValidationFailed
from ..defaults import Market
from .error import SaltTooShort
from .types import ItemAdvertisement, RevelationPayload


def commit_reserve_price(res_price: int, salt: bytes, min_salt_bytes: int = Market.min_salt_bytes) -> bytes:
    """Digest of the 8-byte big-endian reserve price followed by the salt.

    :param res_price: reserve price in units, >= 0
    :param salt: random salt
    :param min_salt_bytes: minimum salt length
    :return: 32-byte commitment
    """
    if res_price < 0:
        raise ValueError(f"commit_reserve_price: reserve price must be >= 0, got {res_price}")
    if len(salt) < min_salt_bytes:
        raise SaltTooShort(min_salt_bytes, len(salt))

    return digest(encode_int(res_price) + salt)


def verify_reserve_price(rev: RevelationPayload,
                         ad: ItemAdvertisement,
                         min_salt_bytes: int = Market.min_salt_bytes) -> bool:
    """Check a revelation against the commitment in its advertisement.

    :param rev: revelation payload
    :param ad: advertisement carrying the commitment
    :param min_salt_bytes: minimum salt length
    :return: True iff the salted digest matches
    """
    if not ad.reveal_flag or ad.reserve_hash is None:
        raise ValidationFailed(Stage.PLATFORM, Rule.NOT_A_REVEAL_TRADE, ad.label)

    try:
        return commit_reserve_price(rev.res_price, rev.salt, min_salt_bytes) == ad.reserve_hash
    except (SaltTooShort, ValueError):
        return False
