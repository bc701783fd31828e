"""Keccak-256 digests and configurable truncation.

Ethereum's Keccak-256 (original multi-rate padding, domain byte 0x01) plus
truncation to a security level of t bits.  Truncation keeps the low-order t
bits of the digest read as a big-endian integer, so t=160 reproduces the
last-20-bytes contract-address convention.  Everything here is pure and
stateless; evaluation budgets are the callers' concern.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import backend
from .errors import ParameterError

DIGEST_BYTES = 32

MIN_TRUNCATION_BITS = 8
MAX_TRUNCATION_BITS = 256


class Algorithm(enum.Enum):
    KECCAK256 = "keccak256"

    @classmethod
    def parse(cls, name: str) -> "Algorithm":
        try:
            return cls(name.lower())
        except ValueError:
            raise ParameterError(f"unknown digest algorithm: {name!r}") from None


@dataclass(frozen=True)
class DigestSpec:
    """Digest algorithm plus truncation width: the security knob."""

    truncation_bits: int
    algorithm: Algorithm = Algorithm.KECCAK256

    def __post_init__(self):
        if not isinstance(self.algorithm, Algorithm):
            object.__setattr__(self, "algorithm", Algorithm.parse(self.algorithm))
        t = self.truncation_bits
        if not isinstance(t, int) or not MIN_TRUNCATION_BITS <= t <= MAX_TRUNCATION_BITS:
            raise ParameterError(
                f"truncation_bits must be an integer in "
                f"[{MIN_TRUNCATION_BITS}, {MAX_TRUNCATION_BITS}], got {t!r}"
            )


@dataclass(frozen=True)
class TruncatedDigest:
    """An unsigned digest value of `width` bits."""

    value: int
    width: int

    def __post_init__(self):
        if not 0 <= self.value < (1 << self.width):
            raise ParameterError(f"value {self.value:#x} does not fit in {self.width} bits")

    def hex(self) -> str:
        nbytes = (self.width + 7) // 8
        return "0x" + self.value.to_bytes(nbytes, "big").hex()


def keccak256(message: bytes) -> bytes:
    """32-byte Keccak-256 digest (Ethereum variant) of any byte string."""
    return backend.keccak256(message)


def truncate(digest: bytes, t: int) -> TruncatedDigest:
    """Low-order t bits of a 32-byte digest under big-endian interpretation."""
    if len(digest) != DIGEST_BYTES:
        raise ParameterError(f"digest must be {DIGEST_BYTES} bytes, got {len(digest)}")
    if not MIN_TRUNCATION_BITS <= t <= MAX_TRUNCATION_BITS:
        raise ParameterError(f"truncation width {t} outside [8, 256]")
    value = int.from_bytes(digest, "big")
    if t < 256:
        value &= (1 << t) - 1
    return TruncatedDigest(value, t)


def truncated_digest(message: bytes, spec: DigestSpec) -> TruncatedDigest:
    """truncate(keccak256(message)): the unit of work every attack budget counts."""
    return truncate(backend.keccak256(message), spec.truncation_bits)


def truncated_value(message: bytes, spec: DigestSpec) -> int:
    """Bare integer form of truncated_digest, for hot comparison loops."""
    t = spec.truncation_bits
    digest = backend.keccak256(message)
    if t <= 64:
        return int.from_bytes(digest[-8:], "big") & ((1 << t) - 1) if t < 64 else int.from_bytes(digest[-8:], "big")
    value = int.from_bytes(digest, "big")
    return value & ((1 << t) - 1) if t < 256 else value
