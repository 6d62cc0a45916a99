"""
Filename: codec.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    Canonical byte encoding of ledger values and the digest function used for
    transaction identifiers, block digests and reserve-price commitments.

    Every value is framed as a one-byte type tag, an 8-byte big-endian body
    length and the body. Records (dataclasses) are the concatenation of their
    fields in declaration order; integers are 8-byte big-endian.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""
import hashlib

from dataclasses import fields, is_dataclass
from enum import Enum
from typing import Any

DIGEST_SIZE = 32
DIGEST_NAME = "sha256"

# range of encode_int
INT_MIN = -(2 ** 63)
INT_MAX = 2 ** 63 - 1


def encode_int(value: int) -> bytes:
    """8-byte big-endian two's complement encoding of an integer.

    :param value: integer to encode
    :return: encoded bytes
    """
    return value.to_bytes(8, "big", signed=True)


def _frame(tag: bytes, body: bytes) -> bytes:
    return tag + len(body).to_bytes(8, "big") + body


def encode(value: Any) -> bytes:
    """Encode a value canonically. The encoding is injective over the
    supported types, so equal encodings imply equal values.

    :param value: None, bool, int, str, bytes, Enum, dataclass, tuple, list or frozenset
    :return: canonical bytes
    """
    if value is None:
        return _frame(b"N", b"")

    # bool must be checked before int
    if isinstance(value, bool):
        return _frame(b"B", b"\x01" if value else b"\x00")

    if isinstance(value, Enum):
        return _frame(b"E", str(value.value).encode("utf-8"))

    if isinstance(value, int):
        return _frame(b"I", encode_int(value))

    if isinstance(value, (bytes, bytearray)):
        return _frame(b"Y", bytes(value))

    if isinstance(value, str):
        return _frame(b"S", value.encode("utf-8"))

    if is_dataclass(value) and not isinstance(value, type):
        body = b"".join(encode(getattr(value, f.name)) for f in fields(value))
        return _frame(b"R", type(value).__name__.encode("utf-8") + b"\x00" + body)

    if isinstance(value, (tuple, list)):
        return _frame(b"L", b"".join(encode(v) for v in value))

    if isinstance(value, (set, frozenset)):
        return _frame(b"F", b"".join(sorted(encode(v) for v in value)))

    raise TypeError(f"No canonical encoding for {type(value).__name__}")


def digest(data: bytes) -> bytes:
    """256-bit digest of a byte string.

    :param data: bytes to hash
    :return: 32-byte digest
    """
    return hashlib.sha256(data).digest()
