"""Deterministic seed derivation.

Every experiment takes one master seed; independent sub-streams (rounds,
trials, walk start points) derive their own 64-bit seeds from it so results
are reproducible regardless of execution order or thread scheduling.
Derivation hashes a canonical encoding of (master, labels...) with the
package's own digest, so it is stable across platforms and Python versions.
"""

from __future__ import annotations

from . import backend

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One splitmix64 output step; mirrors the compiled kernel's constants."""
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _canonical(part) -> bytes:
    if isinstance(part, bytes):
        return b"b" + len(part).to_bytes(4, "big") + part
    if isinstance(part, str):
        raw = part.encode("utf-8")
        return b"s" + len(raw).to_bytes(4, "big") + raw
    if isinstance(part, int):
        return b"i" + (part & MASK64).to_bytes(8, "big")
    raise TypeError(f"cannot derive a seed from {type(part).__name__}")


def derive_seed(master: int, *parts) -> int:
    """64-bit sub-seed for the stream identified by (master, parts...)."""
    data = (master & MASK64).to_bytes(8, "big") + b"".join(_canonical(p) for p in parts)
    return int.from_bytes(backend.keccak256(data)[:8], "big")


def trail_start(seed: int, index: int, t: int) -> int:
    """Deterministic start point for trail `index` of a seeded search."""
    mask = (1 << t) - 1
    return splitmix64((seed + index) & MASK64) & mask
