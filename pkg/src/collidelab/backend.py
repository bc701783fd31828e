"""Backend selection: compiled kernel with pure-Python fallback.

The compiled extension is preferred when importable; set the environment
variable ``COLLIDELAB_BACKEND`` to ``pure`` or ``compiled`` to force a
choice (``compiled`` raises if the extension is missing).  Both backends
expose the same primitives and produce bit-identical results; the compiled
one is ~100x faster and releases the GIL inside walks.
"""

from __future__ import annotations

import os

from . import _purepy

_requested = os.environ.get("COLLIDELAB_BACKEND", "").strip().lower()

if _requested == "pure":
    _impl = _purepy
elif _requested == "compiled":
    from . import _kernel as _impl  # type: ignore[no-redef]
else:
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _purepy

BACKEND_NAME = "compiled" if _impl.COMPILED else "pure"
COMPILED = _impl.COMPILED

keccak256 = _impl.keccak256
digest_many = _impl.digest_many


def pure_keccak256(message: bytes) -> bytes:
    """Always the pure-Python digest, regardless of the active backend."""
    return _purepy.keccak256(message)


def make_stepper(encoder, t: int, digest_fn=None):
    """Build the walk step function f(x) = truncated digest of encode(x).

    Uses the compiled stepper when the encoder publishes a counter-template
    descriptor, t fits in 64 bits, and no custom digest function is injected;
    otherwise falls back to the generic Python stepper.  Both yield identical
    walk sequences.
    """
    descriptor = getattr(encoder, "kernel_descriptor", None)
    if descriptor is not None and callable(descriptor):
        descriptor = descriptor()
    if (
        COMPILED
        and digest_fn is None
        and descriptor is not None
        and 1 <= t <= 64
    ):
        templates, width = descriptor
        return _impl.KernelStepper(templates, width, t)
    encode_fns = getattr(encoder, "family_encode_fns", None)
    if encode_fns is None:
        encode_fns = (encoder.encode,)
    return _purepy.PyStepper(encode_fns, t, digest_fn=digest_fn or keccak256)
