"""Pure-Python digest and walk kernel.

Fallback implementation of the hot primitives: Keccak-256 (Ethereum variant,
multi-rate padding with domain byte 0x01 -- NOT the NIST SHA-3 0x06 padding)
and the iterated-walk helpers used by the collision searchers.  The compiled
kernel in ``_kernel.pyx`` implements the same interface; both must produce
bit-identical results.  This module is roughly two orders of magnitude slower
and exists so the package works without a C toolchain and so the compiled
kernel has an in-tree reference to be checked against.
"""

from __future__ import annotations

COMPILED = False

_MASK64 = (1 << 64) - 1

_ROUND_CONSTANTS = (
    0x0000000000000001, 0x0000000000008082, 0x800000000000808A, 0x8000000080008000,
    0x000000000000808B, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008A, 0x0000000000000088, 0x0000000080008009, 0x000000008000000A,
    0x000000008000808B, 0x800000000000008B, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800A, 0x800000008000000A,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
)

# Rotation offset for lane (x, y) at flat index x + 5*y.
_ROTATION = (
    0, 1, 62, 28, 27,
    36, 44, 6, 55, 20,
    3, 10, 43, 25, 39,
    41, 45, 15, 21, 8,
    18, 2, 61, 56, 14,
)

# pi step destination: lane (x, y) moves to (y, (2x + 3y) mod 5).
_PI_DEST = tuple(
    (i // 5) + 5 * ((2 * (i % 5) + 3 * (i // 5)) % 5) for i in range(25)
)

_RATE_BYTES = 136  # 1088-bit rate, 512-bit capacity


def _keccak_f1600(state: list[int]) -> None:
    """Keccak-f[1600] permutation over 25 lanes of 64 bits, 24 rounds."""
    for rc in _ROUND_CONSTANTS:
        # theta
        c = [
            state[x] ^ state[x + 5] ^ state[x + 10] ^ state[x + 15] ^ state[x + 20]
            for x in range(5)
        ]
        for x in range(5):
            cx = c[(x + 1) % 5]
            d = c[(x + 4) % 5] ^ (((cx << 1) | (cx >> 63)) & _MASK64)
            for y in range(0, 25, 5):
                state[x + y] ^= d
        # rho + pi
        b = [0] * 25
        b[0] = state[0]
        for i in range(1, 25):
            r = _ROTATION[i]
            lane = state[i]
            b[_PI_DEST[i]] = ((lane << r) | (lane >> (64 - r))) & _MASK64
        # chi
        for y in range(0, 25, 5):
            b0, b1, b2, b3, b4 = b[y : y + 5]
            state[y] = b0 ^ (~b1 & b2)
            state[y + 1] = b1 ^ (~b2 & b3)
            state[y + 2] = b2 ^ (~b3 & b4)
            state[y + 3] = b3 ^ (~b4 & b0)
            state[y + 4] = b4 ^ (~b0 & b1)
        # iota
        state[0] ^= rc


def keccak256(message: bytes) -> bytes:
    """Ethereum-style Keccak-256 of an arbitrary byte string."""
    state = [0] * 25
    offset = 0
    length = len(message)
    while length - offset >= _RATE_BYTES:
        block = message[offset : offset + _RATE_BYTES]
        for i in range(17):
            state[i] ^= int.from_bytes(block[8 * i : 8 * i + 8], "little")
        _keccak_f1600(state)
        offset += _RATE_BYTES
    block = bytearray(_RATE_BYTES)
    block[: length - offset] = message[offset:]
    block[length - offset] ^= 0x01  # multi-rate padding, Keccak domain byte
    block[_RATE_BYTES - 1] ^= 0x80
    for i in range(17):
        state[i] ^= int.from_bytes(block[8 * i : 8 * i + 8], "little")
    _keccak_f1600(state)
    out = bytearray(32)
    for i in range(4):
        out[8 * i : 8 * i + 8] = state[i].to_bytes(8, "little")
    return bytes(out)


def digest_many(messages) -> list[bytes]:
    return [keccak256(m) for m in messages]


class PyStepper:
    """Iterated-walk step function f(x) = low t bits of keccak256(encode(x)).

    ``encode_fns`` is a one- or two-element tuple of counter-to-message
    callables; with two elements, bit 0 of the walk value selects the family
    and the remaining bits are the family counter.  ``digest_fn`` is
    injectable so tests can count digest evaluations.
    """

    def __init__(self, encode_fns, t: int, digest_fn=None):
        self._encoders = tuple(encode_fns)
        if len(self._encoders) not in (1, 2):
            raise ValueError("expected one or two encoder callables")
        self.t = t
        self._mask = (1 << t) - 1
        self._digest = digest_fn if digest_fn is not None else keccak256
        self._wide = t > 64

    def encode(self, x: int) -> bytes:
        if len(self._encoders) == 2:
            return self._encoders[x & 1]((x >> 1) & _MASK64)
        return self._encoders[0](x & _MASK64)

    def step(self, x: int) -> int:
        digest = self._digest(self.encode(x))
        if self._wide:
            return int.from_bytes(digest, "big") & self._mask
        return int.from_bytes(digest[-8:], "big") & self._mask

    def walk_trail(self, start: int, dp_bits: int, max_steps: int):
        """Walk from ``start`` until a distinguished point (low dp_bits zero).

        The distinguished-point predicate is tested on successors only, so a
        trail always takes at least one step.  Returns (endpoint, length,
        hit_dp); when hit_dp is False the walk was cut off at max_steps and
        the endpoint is not distinguished.
        """
        dp_mask = (1 << dp_bits) - 1
        x = start
        n = 0
        step = self.step
        while n < max_steps:
            x = step(x)
            n += 1
            if x & dp_mask == 0:
                return x, n, True
        return x, n, False

    def walk_meet(self, start_a: int, len_a: int, start_b: int, len_b: int):
        """Locate the colliding step of two trails sharing an endpoint.

        Returns (x, y, common, evals) where step(x) == step(y) == common and
        x != y, or (None, None, None, evals) when one trail is a sub-walk of
        the other (no collision recoverable from this pair).
        """
        xa, la, xb, lb = start_a, len_a, start_b, len_b
        if la < lb:
            xa, xb = xb, xa
            la, lb = lb, la
        step = self.step
        evals = 0
        for _ in range(la - lb):
            xa = step(xa)
            evals += 1
        if xa == xb:
            return None, None, None, evals
        while True:
            na = step(xa)
            nb = step(xb)
            evals += 2
            if na == nb:
                return xa, xb, na, evals
            xa, xb = na, nb
