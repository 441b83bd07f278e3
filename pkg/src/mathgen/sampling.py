"""Seeded splittable randomness with probability accounting.

Questions must have probability at most 10**(-alpha) under the generator's
random choices. Every value draw goes through an EntropyBudget which records
log10 of the size of the set it was drawn from; a question may only be
emitted once the accumulated credit covers its alpha target. Draws that only
pick question *structure* (templates, digit allocations) claim no credit, so
the per-path product bound stays sound.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .numeric import InvalidInputError, coprime_count

# comparisons carry a tiny slack so float rounding always errs conservative
_SLACK = 1e-9


class RandomStream:
    """Counter-based stream keyed by (seed, label path), splittable by label.

    Identical seed and label path always produce identical draws; children
    are keyed by hashing, so they are independent of the parent's position.
    """

    __slots__ = ("_key", "_counter", "_buffer")

    def __init__(self, seed: int, _key: Optional[bytes] = None):
        if _key is None:
            _key = hashlib.blake2b(
                seed.to_bytes(8, "little", signed=True),
                digest_size=16, person=b"mathgen-root").digest()
        self._key = _key
        self._counter = 0
        self._buffer: list[int] = []

    def child(self, label: str | int) -> "RandomStream":
        text = str(label).encode()
        key = hashlib.blake2b(text, digest_size=16, key=self._key).digest()
        return RandomStream(0, _key=key)

    def _refill(self) -> None:
        block = hashlib.blake2b(
            self._counter.to_bytes(8, "little"),
            digest_size=64, key=self._key, person=b"mathgen-draw").digest()
        self._counter += 1
        self._buffer = [int.from_bytes(block[i:i + 8], "little")
                        for i in range(0, 64, 8)]

    def bits64(self) -> int:
        if not self._buffer:
            self._refill()
        return self._buffer.pop()

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased for any positive n."""
        if n <= 0:
            raise InvalidInputError("randbelow needs a positive bound")
        if n == 1:
            return 0
        bits = n.bit_length()
        words = (bits + 63) // 64
        mask = (1 << bits) - 1
        while True:
            value = 0
            for _ in range(words):
                value = value << 64 | self.bits64()
            value &= mask
            if value < n:
                return value

    def randint(self, lo: int, hi: int) -> int:
        if lo > hi:
            raise InvalidInputError(f"empty range [{lo}, {hi}]")
        return lo + self.randbelow(hi - lo + 1)

    def uniform(self) -> float:
        return (self.bits64() >> 11) / float(1 << 53)

    def choice(self, seq: Sequence):
        return seq[self.randbelow(len(seq))]

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]
        return items


@dataclass
class DrawRecord:
    label: str
    log10_size: float


class BudgetError(RuntimeError):
    """An emitted question failed to reach its entropy target."""


class EntropyBudget:
    """Tracks log10 of the inverse probability bound for one question."""

    def __init__(self, target_alpha: float, _sink: Optional[list] = None):
        if target_alpha < 0:
            raise InvalidInputError("alpha must be non-negative")
        self.target_alpha = float(target_alpha)
        self._local: list[DrawRecord] = []
        self._sink = _sink if _sink is not None else self._local

    @property
    def records(self) -> list[DrawRecord]:
        return list(self._sink)

    def credit_log10(self, label: str, log10_size: float) -> None:
        if log10_size < 0:
            raise InvalidInputError("credit cannot be negative")
        record = DrawRecord(label, log10_size)
        if self._sink is not self._local:
            self._sink.append(record)
        self._local.append(record)

    def credit(self, label: str, set_size: int) -> None:
        if set_size < 1:
            raise InvalidInputError("set size must be at least 1")
        self.credit_log10(label, math.log10(set_size))

    @property
    def accumulated(self) -> float:
        return math.fsum(r.log10_size for r in self._local)

    @property
    def remaining(self) -> float:
        """Outstanding log10 credit; padded so set sizing errs upward."""
        if self.satisfied:
            return 0.0
        return self.target_alpha - self.accumulated + _SLACK

    @property
    def satisfied(self) -> bool:
        # exact equality counts: prod 1/a_i = 10**-alpha meets the bound.
        # The audit recomputes this very sum, so both sides always agree.
        return self.accumulated >= self.target_alpha

    def require_satisfied(self) -> None:
        if not self.satisfied:
            raise BudgetError(
                f"credit {self.accumulated:.3f} below alpha {self.target_alpha}")


def allocate(budget: EntropyBudget, weights: Sequence[float]) -> list[EntropyBudget]:
    """Split the remaining target across children, proportional to weights.

    Children report their draws into the parent's record log, so a question
    level audit still sees every draw; the parent is satisfied exactly when
    all children are.
    """
    if any(w <= 0 for w in weights):
        raise InvalidInputError("weights must be positive")
    total = float(sum(weights))
    remaining = max(0.0, budget.target_alpha - budget.accumulated)
    return [EntropyBudget(remaining * w / total, _sink=budget._sink)
            for w in weights]


# --------------------------------------------------------------------------
# Credited draws
# --------------------------------------------------------------------------

def draw_from_set(stream: RandomStream, budget: EntropyBudget, size: int,
                  label: str = "set") -> int:
    """Uniform index in [0, size) with credit log10(size)."""
    if size < 1:
        raise InvalidInputError("set must have at least one element")
    index = stream.randbelow(size)
    budget.credit(label, size)
    return index


def sample_integer(stream: RandomStream, budget: EntropyBudget, *,
                   symmetric_width: Optional[int] = None,
                   first_positive: Optional[int] = None,
                   coprime_to: Optional[tuple[int, int, int]] = None,
                   nonzero_range: Optional[tuple[int, int]] = None,
                   label: str = "integer") -> int:
    """Uniform integer from one constraint set, credited with its exact size.

    Sets: symmetric about zero {-w..w} minus 0; the first n positive
    integers; integers in [lo, hi] coprime to m; or a range minus 0.
    """
    if symmetric_width is not None:
        if symmetric_width < 1:
            raise InvalidInputError("empty symmetric set")
        index = draw_from_set(stream, budget, 2 * symmetric_width, label)
        value = index - symmetric_width
        return value if value < 0 else value + 1
    if first_positive is not None:
        if first_positive < 1:
            raise InvalidInputError("empty positive set")
        return draw_from_set(stream, budget, first_positive, label) + 1
    if coprime_to is not None:
        m, lo, hi = coprime_to
        count = coprime_count(lo, hi, m)
        if count < 1:
            raise InvalidInputError("no coprime integers in range")
        budget.credit(label, count)
        while True:  # rejection keeps the draw uniform over the subset
            value = stream.randint(lo, hi)
            if math.gcd(value, m) == 1:
                return value
    if nonzero_range is not None:
        lo, hi = nonzero_range
        size = (hi - lo + 1) - (1 if lo <= 0 <= hi else 0)
        if size < 1:
            raise InvalidInputError("empty nonzero range")
        budget.credit(label, size)
        while True:
            value = stream.randint(lo, hi)
            if value != 0:
                return value
    raise InvalidInputError("no constraint given")


# --------------------------------------------------------------------------
# Alpha policy
# --------------------------------------------------------------------------

TRAIN_ALPHA_RANGE = (3.0, 10.0)
TEST_ALPHA = 8.0

SPLITS = ("train", "interpolate", "extrapolate")


@dataclass(frozen=True)
class AlphaPolicy:
    train_low: float = TRAIN_ALPHA_RANGE[0]
    train_high: float = TRAIN_ALPHA_RANGE[1]
    interpolate_alpha: float = TEST_ALPHA
    extrapolate_overrides: tuple[tuple[str, float], ...] = ()
    extrapolate_default: float = TEST_ALPHA

    def describe(self) -> str:
        return (f"train=U[{self.train_low},{self.train_high}] "
                f"interpolate={self.interpolate_alpha} "
                f"extrapolate={self.extrapolate_default}")


DEFAULT_POLICY = AlphaPolicy()


def draw_alpha(policy: AlphaPolicy, split: str, stream: RandomStream,
               module_id: str = "") -> float:
    if split == "train":
        u = stream.uniform()
        return policy.train_low + (policy.train_high - policy.train_low) * u
    if split == "interpolate":
        return policy.interpolate_alpha
    if split == "extrapolate":
        return dict(policy.extrapolate_overrides).get(
            module_id, policy.extrapolate_default)
    raise InvalidInputError(f"unknown split {split!r}")
