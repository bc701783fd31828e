"""Contract-address derivation from deployment records.

An address is the truncated Keccak-256 of the RLP list
[creator, nonce, initcode]; at 160 bits this is the EIP86-style
deployment-address formula.  The bracketed fields are read as a
three-element RLP list (the established Ethereum convention for address
derivation), so distinct records always produce distinct preimage bytes and
any address equality is a genuine digest collision.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import rlp
from .digest import DigestSpec, TruncatedDigest, truncated_digest
from .errors import ParameterError

CREATOR_BYTES = 20
MAX_INITCODE = 4096  # keeps search candidates cheap to hash millions of times


@dataclass(frozen=True)
class DeploymentRecord:
    creator: bytes
    nonce: int
    initcode: bytes

    def __post_init__(self):
        if not isinstance(self.creator, bytes) or len(self.creator) != CREATOR_BYTES:
            raise ParameterError(f"creator must be exactly {CREATOR_BYTES} bytes")
        if not isinstance(self.nonce, int) or self.nonce < 0:
            raise ParameterError("nonce must be a non-negative integer")
        if not isinstance(self.initcode, bytes) or len(self.initcode) > MAX_INITCODE:
            raise ParameterError(f"initcode must be bytes of length <= {MAX_INITCODE}")


class AddressValue(TruncatedDigest):
    """A derived contract address; width matches the spec it came from."""


def address_preimage_bytes(record: DeploymentRecord) -> bytes:
    """The exact bytes fed to the digest: rlp([creator, nonce, initcode])."""
    return rlp.encode([record.creator, rlp.encode_uint(record.nonce), record.initcode])


def derive_address(record: DeploymentRecord, spec: DigestSpec) -> AddressValue:
    digest = truncated_digest(address_preimage_bytes(record), spec)
    return AddressValue(digest.value, digest.width)


def decode_preimage(preimage: bytes) -> DeploymentRecord:
    """Rebuild the deployment record from preimage bytes (strict RLP)."""
    item = rlp.decode(preimage)
    if not isinstance(item, list) or len(item) != 3:
        raise ParameterError("preimage is not a three-field deployment list")
    creator, nonce_leaf, initcode = item
    if not isinstance(creator, bytes) or not isinstance(nonce_leaf, bytes) or not isinstance(initcode, bytes):
        raise ParameterError("deployment fields must be byte strings")
    return DeploymentRecord(creator, int.from_bytes(nonce_leaf, "big"), initcode)
