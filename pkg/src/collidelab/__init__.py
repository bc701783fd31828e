"""collidelab: a desk-scale collision-attack laboratory for truncated digests.

Implements birthday-style collision search (brute force, Pollard rho with
Brent cycle detection, and parallel distinguished-point search) against
truncated Keccak-256, and uses it to mount two blockchain-flavoured attacks:
forging a pair of contract deployments that land on one address, and biasing
a commit-reveal XOR randomness beacon by equivocating on a committed digest.
Two mitigations -- wider digests and temporal binding -- are quantified by
reproducible seeded studies.

All search widths here are deliberately weakened (t <= 48 bits).  Real
160/256-bit digests are far beyond this tool; the point is the scaling law,
not the scalp.
"""

__version__ = "0.1.0"

from .digest import Algorithm, DigestSpec, TruncatedDigest, keccak256, truncate, truncated_digest
from .errors import ParameterError, RlpDecodeError

__all__ = [
    "Algorithm",
    "DigestSpec",
    "TruncatedDigest",
    "keccak256",
    "truncate",
    "truncated_digest",
    "ParameterError",
    "RlpDecodeError",
    "__version__",
]
