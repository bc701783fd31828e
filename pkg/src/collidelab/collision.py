"""Birthday-collision engine over truncated digests.

Three searchers with explicit evaluation budgets:

* brute force with a value table -- the independent oracle, t <= 32 only;
* Pollard rho with Brent cycle detection -- memoryless, single walk;
* parallel distinguished-point search (van Oorschot-Wiener) -- many short
  trails published to a shared table, scaled across worker threads.

The walk step function is f(x) = truncated_digest(encode(x)), where the
encoder is the attacker's controlled message space.  Budgets count digest
evaluations (including trail re-walks), never wall time, so results are
machine-independent.

Determinism: trail contents depend only on (seed, trail index), trails are
resolved in index order at wave boundaries, and the returned pair is the one
whose later trail index is minimal -- so a search yields the same collision
regardless of worker count or thread scheduling.  Worker count changes wall
time only.  The single corner this does not cover is a collision completing
in the same wave in which the budget runs dry; there, which trails got the
last evaluations is scheduling-dependent.
"""

from __future__ import annotations

import math
import threading
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import backend
from .digest import DigestSpec, TruncatedDigest, truncated_digest
from .errors import ParameterError
from .seeding import trail_start

MASK64 = (1 << 64) - 1

BRUTE_MAX_BITS = 32  # value-table memory guard
TABLE_CAPACITY = 1 << 22  # trail-table ceiling; oldest entries evicted
TRAIL_LENGTH_FACTOR = 20  # abandon trails longer than factor * 2^dp_bits


@dataclass(frozen=True)
class CounterEncoder:
    """Injective counter-to-message map: prefix || big-endian counter || suffix."""

    label: str = "counter"
    prefix: bytes = b""
    suffix: bytes = b""
    counter_width: int = 8

    def __post_init__(self):
        if not 1 <= self.counter_width <= 8:
            raise ParameterError("counter_width must be 1..8 bytes")

    @property
    def domain_bits(self) -> int:
        return 8 * self.counter_width

    def encode(self, counter: int) -> bytes:
        counter &= (1 << (8 * self.counter_width)) - 1
        return self.prefix + counter.to_bytes(self.counter_width, "big") + self.suffix

    def kernel_descriptor(self):
        return ((self.prefix, self.suffix),), self.counter_width

    @property
    def family_encode_fns(self):
        return (self.encode,)


@dataclass(frozen=True)
class CombinedEncoder:
    """Two-family message space: bit 0 of the counter picks family a or b,
    the remaining bits feed that family's encoder."""

    a: CounterEncoder
    b: CounterEncoder

    @property
    def label(self) -> str:
        return f"{self.a.label}+{self.b.label}"

    @property
    def family_labels(self) -> tuple[str, str]:
        return (self.a.label, self.b.label)

    @property
    def domain_bits(self) -> int:
        return min(self.a.domain_bits, self.b.domain_bits) + 1

    def encode(self, counter: int) -> bytes:
        family = self.b if counter & 1 else self.a
        return family.encode((counter >> 1) & MASK64)

    def kernel_descriptor(self):
        if isinstance(self.a, CounterEncoder) and isinstance(self.b, CounterEncoder):
            if self.a.counter_width == self.b.counter_width:
                return (
                    ((self.a.prefix, self.a.suffix), (self.b.prefix, self.b.suffix)),
                    self.a.counter_width,
                )
        return None

    @property
    def family_encode_fns(self):
        return (self.a.encode, self.b.encode)


@dataclass(frozen=True)
class AttackBudget:
    """Evaluation allowance; optionally derived from a hash rate and a time window."""

    max_evaluations: int

    def __post_init__(self):
        if not isinstance(self.max_evaluations, int) or self.max_evaluations < 1:
            raise ParameterError("budget must allow at least one evaluation")

    @classmethod
    def from_rate_window(cls, hash_rate: float, window_seconds: float) -> "AttackBudget":
        evaluations = math.floor(hash_rate * window_seconds)
        if evaluations < 1:
            raise ParameterError(
                f"hash_rate {hash_rate} x window {window_seconds}s affords no evaluations"
            )
        return cls(evaluations)


@dataclass(frozen=True)
class CollisionPair:
    """Two distinct messages sharing one truncated digest."""

    m1: bytes
    m2: bytes
    digest_value: TruncatedDigest
    evaluations_used: int
    families: tuple[str, str] | None = None

    def __post_init__(self):
        if self.m1 == self.m2:
            raise ParameterError("collision messages must differ")


@dataclass(frozen=True)
class Exhausted:
    """Search stopped by the budget before finding a collision."""

    evaluations_used: int


def verify_pair(pair: CollisionPair, spec: DigestSpec) -> bool:
    """Independent recomputation of the CollisionPair invariant."""
    if pair.m1 == pair.m2:
        return False
    d1 = truncated_digest(pair.m1, spec)
    d2 = truncated_digest(pair.m2, spec)
    return d1 == d2 == pair.digest_value


def expected_work(t: int) -> float:
    """Expected digest evaluations to the first collision: sqrt(pi/2 * 2^t)."""
    if not 1 <= t <= 256:
        raise ParameterError("t must be in [1, 256]")
    return math.sqrt(math.pi / 2) * 2 ** (t / 2)


def success_probability(q: int, t: int) -> float:
    """Probability of at least one collision within q evaluations: 1 - exp(-q(q-1)/2^(t+1))."""
    if q < 0:
        raise ParameterError("q must be non-negative")
    if q <= 1:
        return 0.0
    return -math.expm1(-(q * (q - 1)) / 2 ** (t + 1))


def default_distinguished_bits(t: int) -> int:
    """Trail-length knob: 2^d expected steps per trail."""
    return min(max(4, t // 4), max(t - 4, 0))


def _check_encoder_domain(encoder, t: int) -> None:
    domain = getattr(encoder, "domain_bits", 64)
    if t > domain:
        raise ParameterError(
            f"encoder domain ({domain} bits) cannot cover {t}-bit walk values"
        )


def find_collision_brute(encoder, spec: DigestSpec, budget: AttackBudget, *, digest_fn=None):
    """Counter-table search: the oracle the walking searchers are checked against.

    Evaluates encode(0), encode(1), ... and returns the first repeated
    truncated digest.  Guaranteed a collision within 2^t + 1 evaluations by
    pigeonhole, budget permitting.
    """
    t = spec.truncation_bits
    if t > BRUTE_MAX_BITS:
        raise ParameterError(f"brute-force search is limited to t <= {BRUTE_MAX_BITS}")
    _check_encoder_domain(encoder, t)
    stepper = backend.make_stepper(encoder, t, digest_fn)
    seen: dict[int, int] = {}
    for counter in range(budget.max_evaluations):
        value = stepper.step(counter)
        if value in seen:
            return CollisionPair(
                m1=encoder.encode(seen[value]),
                m2=encoder.encode(counter),
                digest_value=TruncatedDigest(value, t),
                evaluations_used=counter + 1,
            )
        seen[value] = counter
    return Exhausted(budget.max_evaluations)


def _brent_attempt(stepper, x0: int, limit: int):
    """One rho walk from x0 with Brent cycle detection.

    Returns (kind, payload, evals) with kind in {"pair", "degenerate",
    "exhausted"}; a pair payload is (x, y, common_value).
    """
    evals = 0
    step = stepper.step
    if limit < 1:
        return "exhausted", None, evals
    power = lam = 1
    tortoise = x0
    hare = step(x0)
    evals += 1
    while tortoise != hare:
        if evals >= limit:
            return "exhausted", None, evals
        if power == lam:
            tortoise = hare
            power <<= 1
            lam = 0
        hare = step(hare)
        evals += 1
        lam += 1
    # lam is the cycle length; locate the colliding pair at the cycle entry
    hare = x0
    for _ in range(lam):
        if evals >= limit:
            return "exhausted", None, evals
        hare = step(hare)
        evals += 1
    if hare == x0:
        return "degenerate", None, evals  # start already on the cycle, no tail
    tortoise = x0
    while True:
        if evals + 2 > limit:
            return "exhausted", None, evals
        next_t = step(tortoise)
        next_h = step(hare)
        evals += 2
        if next_t == next_h:
            return "pair", (tortoise, hare, next_t), evals
    # not reached


def find_collision_rho(
    encoder,
    spec: DigestSpec,
    seed: int,
    budget: AttackBudget,
    *,
    digest_fn=None,
    require_distinct_families: bool = False,
):
    """Pollard rho with Brent cycle detection; restarts on degenerate walks.

    Fully deterministic given (encoder, spec, seed).
    """
    t = spec.truncation_bits
    walk_bits = t if not require_distinct_families else t  # family bit lives inside t
    _check_encoder_domain(encoder, walk_bits)
    stepper = backend.make_stepper(encoder, t, digest_fn)
    limit = budget.max_evaluations
    used = 0
    attempt = 0
    while used < limit:
        x0 = trail_start(seed, attempt, t)
        kind, payload, evals = _brent_attempt(stepper, x0, limit - used)
        used += evals
        if kind == "exhausted":
            break
        if kind == "pair":
            x, y, common = payload
            pair = _materialize_pair(encoder, x, y, common, t, used, require_distinct_families)
            if pair is not None:
                return pair
        attempt += 1
    return Exhausted(used)


def _materialize_pair(encoder, x, y, common, t, used, require_distinct_families):
    """Turn colliding walk values into a CollisionPair, or None if rejected."""
    families = None
    if require_distinct_families:
        if (x & 1) == (y & 1):
            return None
        if x & 1:  # normalize: family-a message first
            x, y = y, x
        families = encoder.family_labels
    m1 = encoder.encode(x)
    m2 = encoder.encode(y)
    if m1 == m2:
        return None  # non-injective degenerate configuration
    return CollisionPair(
        m1=m1,
        m2=m2,
        digest_value=TruncatedDigest(common, t),
        evaluations_used=used,
        families=families,
    )


class _BudgetPool:
    """Thread-safe evaluation allowance with claim/refund accounting."""

    def __init__(self, total: int):
        self.remaining = total
        self._lock = threading.Lock()

    def claim(self, amount: int) -> int:
        with self._lock:
            granted = min(amount, self.remaining)
            self.remaining -= granted
            return granted

    def refund(self, amount: int) -> None:
        if amount:
            with self._lock:
                self.remaining += amount


def find_collision_parallel(
    encoder,
    spec: DigestSpec,
    workers: int = 1,
    distinguished_bits: int | None = None,
    seed: int = 0,
    budget: AttackBudget | None = None,
    *,
    digest_fn=None,
    progress=None,
    require_distinct_families: bool = False,
    wave_factor: int = 4,
    table_capacity: int = TABLE_CAPACITY,
):
    """Distinguished-point search over many seeded trails.

    Each trail walks from a pseudorandom start until a point with the low
    `distinguished_bits` bits zero, then publishes (start, length, endpoint)
    to a shared table; an endpoint shared by two trails is re-walked to the
    exact colliding step.  Workers run trails on real threads (the walk
    kernel releases the GIL); the budget is global.
    """
    if budget is None:
        raise ParameterError("an AttackBudget is required")
    if workers < 1:
        raise ParameterError("workers must be >= 1")
    if wave_factor < 1:
        raise ParameterError("wave_factor must be >= 1")
    t = spec.truncation_bits
    d = default_distinguished_bits(t) if distinguished_bits is None else distinguished_bits
    if not 0 <= d <= t - 4:
        raise ParameterError(f"distinguished_bits must be in [0, t-4] = [0, {t - 4}]")
    _check_encoder_domain(encoder, t)

    stepper = backend.make_stepper(encoder, t, digest_fn)
    max_trail = TRAIL_LENGTH_FACTOR << d
    pool = _BudgetPool(budget.max_evaluations)
    table: dict[int, list] = {}
    fifo: deque = deque()
    next_index = 0
    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None

    def run_block(indices):
        results = []
        for index in indices:
            cap = pool.claim(max_trail)
            if cap == 0:
                break
            start = trail_start(seed, index, t)
            end, length, hit_dp = stepper.walk_trail(start, d, cap)
            if length < cap:
                pool.refund(cap - length)
            results.append((index, start, end, length, hit_dp))
        return results

    try:
        while True:
            if pool.remaining <= 0:
                return Exhausted(budget.max_evaluations - pool.remaining)
            blocks = []
            for _ in range(workers):
                blocks.append(range(next_index, next_index + wave_factor))
                next_index += wave_factor
            if executor is not None:
                wave = [r for rs in executor.map(run_block, blocks) for r in rs]
            else:
                wave = [r for b in blocks for r in run_block(b)]
            wave.sort(key=lambda rec: rec[0])

            candidates = []
            for index, start, end, length, hit_dp in wave:
                if not hit_dp:
                    continue  # cycle trap or budget cutoff: nothing publishable
                for prev in table.get(end, []):
                    candidates.append((index, start, length, prev))
                entries = table.setdefault(end, [])
                entries.append((index, start, length))
                fifo.append(end)
                if len(fifo) > table_capacity:
                    oldest = fifo.popleft()
                    stale = table.get(oldest)
                    if stale:
                        stale.pop(0)
                        if not stale:
                            del table[oldest]
            if progress is not None:
                progress(budget.max_evaluations - pool.remaining, len(fifo))

            candidates.sort(key=lambda c: (c[0], c[3][0]))
            for index, start, length, (prev_index, prev_start, prev_length) in candidates:
                need = length + prev_length
                granted = pool.claim(need)
                if granted < need:
                    pool.refund(granted)
                    continue  # cannot afford verification; budget is nearly gone
                x, y, common, evals = stepper.walk_meet(start, length, prev_start, prev_length)
                pool.refund(need - evals)
                if x is None:
                    continue  # one trail is a sub-walk of the other
                used = budget.max_evaluations - pool.remaining
                pair = _materialize_pair(
                    encoder, x, y, common, t, used, require_distinct_families
                )
                if pair is not None:
                    return pair
    finally:
        if executor is not None:
            executor.shutdown(wait=False, cancel_futures=True)


def find_cross_family_collision(
    encoder_a: CounterEncoder,
    encoder_b: CounterEncoder,
    spec: DigestSpec,
    seed: int,
    budget: AttackBudget,
    *,
    searcher: str = "parallel",
    workers: int = 1,
    distinguished_bits: int | None = None,
    digest_fn=None,
    progress=None,
):
    """Collision with one message from each family (e.g. benign vs nefarious).

    Runs the chosen searcher over the combined encoder and accepts only
    pairs whose two messages come from different families; same-family
    collisions are rejected and the search continues, so expected work is
    about twice the plain birthday bound.
    """
    combined = CombinedEncoder(encoder_a, encoder_b)
    if searcher == "rho":
        return find_collision_rho(
            combined, spec, seed, budget,
            digest_fn=digest_fn, require_distinct_families=True,
        )
    if searcher == "parallel":
        return find_collision_parallel(
            combined, spec, workers=workers, distinguished_bits=distinguished_bits,
            seed=seed, budget=budget, digest_fn=digest_fn, progress=progress,
            require_distinct_families=True,
        )
    raise ParameterError(f"unknown searcher {searcher!r} (rho or parallel)")
