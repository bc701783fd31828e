"""Canonical Recursive Length Prefix encoding and strict decoding.

An item is either a byte string (leaf) or a list of items.  Encoding follows
the Ethereum rules: a single byte below 0x80 stands for itself, short
strings get a 0x80+len prefix, long strings 0xb7+len(len) then the length,
and lists the same scheme starting at 0xc0/0xf7.  The decoder enforces
canonical form strictly -- non-minimal lengths, an unnecessary 0x81 wrapper
around a self-encoding byte, and trailing bytes are all rejected -- so the
encoding is injective and address collisions found downstream can never be
encoding aliases.
"""

from __future__ import annotations

from .errors import RlpDecodeError

RlpItem = "bytes | list"  # leaf or ordered list of items, arbitrarily nested

_SHORT_LIMIT = 55


def encode(item) -> bytes:
    """Canonical RLP bytes of a leaf/list tree."""
    if isinstance(item, (bytes, bytearray)):
        return _encode_bytes(bytes(item))
    if isinstance(item, (list, tuple)):
        payload = b"".join(encode(sub) for sub in item)
        return _length_prefix(len(payload), 0xC0) + payload
    raise TypeError(f"RLP items are bytes or lists, not {type(item).__name__}")


def encode_uint(n: int) -> bytes:
    """Leaf holding the minimal big-endian form of n (zero -> empty leaf)."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise TypeError(f"expected a non-negative integer, got {n!r}")
    if n == 0:
        return b""
    return n.to_bytes((n.bit_length() + 7) // 8, "big")


def _encode_bytes(data: bytes) -> bytes:
    if len(data) == 1 and data[0] <= 0x7F:
        return data
    return _length_prefix(len(data), 0x80) + data


def _length_prefix(length: int, base: int) -> bytes:
    if length <= _SHORT_LIMIT:
        return bytes([base + length])
    length_bytes = length.to_bytes((length.bit_length() + 7) // 8, "big")
    return bytes([base + _SHORT_LIMIT + len(length_bytes)]) + length_bytes


def decode(data: bytes):
    """Inverse of encode.  Rejects anything non-canonical, with byte offset."""
    if not isinstance(data, (bytes, bytearray)):
        raise TypeError("decode expects bytes")
    data = bytes(data)
    if not data:
        raise RlpDecodeError("empty input", 0)
    item, end = _decode_at(data, 0)
    if end != len(data):
        raise RlpDecodeError("trailing bytes after item", end)
    return item


def _decode_at(data: bytes, pos: int):
    head = data[pos]
    if head <= 0x7F:
        return data[pos : pos + 1], pos + 1
    if head <= 0xBF:
        payload, end = _decode_payload(data, pos, 0x80)
        if len(payload) == 1 and payload[0] <= 0x7F:
            raise RlpDecodeError("single byte below 0x80 must encode as itself", pos)
        return payload, end
    payload, end = _decode_payload(data, pos, 0xC0)
    items = []
    cursor = pos + (end - pos) - len(payload)  # first payload byte
    stop = cursor + len(payload)
    while cursor < stop:
        item, cursor = _decode_at(data, cursor)
        if cursor > stop:
            raise RlpDecodeError("list item overruns list payload", cursor)
        items.append(item)
    return items, end


def _decode_payload(data: bytes, pos: int, base: int) -> tuple[bytes, int]:
    head = data[pos]
    if head <= base + _SHORT_LIMIT:
        length = head - base
        start = pos + 1
    else:
        len_of_len = head - base - _SHORT_LIMIT
        start = pos + 1 + len_of_len
        if pos + 1 + len_of_len > len(data):
            raise RlpDecodeError("length bytes truncated", pos)
        length_bytes = data[pos + 1 : pos + 1 + len_of_len]
        if length_bytes[0] == 0:
            raise RlpDecodeError("length has leading zero byte", pos + 1)
        length = int.from_bytes(length_bytes, "big")
        if length <= _SHORT_LIMIT:
            raise RlpDecodeError("long form used for short payload", pos)
    if start + length > len(data):
        raise RlpDecodeError("payload truncated", pos)
    return data[start : start + length], start + length
