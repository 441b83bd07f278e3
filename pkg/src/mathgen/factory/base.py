"""Shared machinery for question generators.

A generator works backwards from a sampled answer wherever that avoids
degenerate questions, draws every value through the entropy budget, and
leaves structural choices (templates, digit allocations, operator picks)
uncredited so the per-path probability bound stays valid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from ..numeric import ExactDecimal, InvalidInputError, is_prime
from ..sampling import EntropyBudget, RandomStream
from ..symbolic import format_entity

QUESTION_LIMIT = 160
ANSWER_LIMIT = 30
ALPHABET = frozenset(chr(c) for c in range(0x20, 0x7F))  # 95 printable chars

AREAS = ("algebra", "arithmetic", "calculus", "comparison", "measurement",
         "numbers", "polynomials", "probability")

# single-letter entity/variable pool; the full alphabet is kept (the paper
# itself uses "l" as a name) per the configurable-pool decision
LETTER_POOL = "abcdefghijklmnopqrstuvwxyz"


class RetrySignal(RuntimeError):
    """Regenerate the whole question from a fresh child stream."""


class GenerationError(RuntimeError):
    """A module kept violating its constraints for 100 attempts."""


@dataclass(frozen=True)
class QAPair:
    question: str
    answer: str
    module_id: str
    split: str
    alpha: float


def validate_pair(question: str, answer: str) -> None:
    if not answer:
        raise RetrySignal("empty answer")
    if len(question) > QUESTION_LIMIT:
        raise RetrySignal(f"question too long ({len(question)})")
    if len(answer) > ANSWER_LIMIT:
        raise RetrySignal(f"answer too long ({len(answer)})")
    for text in (question, answer):
        bad = set(text) - ALPHABET
        if bad:
            raise RetrySignal(f"characters outside the alphabet: {bad}")


@dataclass(frozen=True)
class ExtrapolationAxis:
    """The difficulty axis a variant pushes past its training envelope."""

    parameter: str
    train_max: int
    low: int
    high: int

    def __post_init__(self):
        if self.low <= self.train_max:
            raise InvalidInputError("extrapolation must exceed the train max")


@dataclass(frozen=True)
class ModuleSpec:
    module_id: str
    generate: Callable  # GenContext -> (final_sentence, answer_entity)
    composable: object = False  # False | "integer" | "function"
    function_slots: int = 0  # required function inputs (polynomial modules)
    params: tuple = ()  # envelope knobs as (key, value) pairs
    dedupe: bool = False  # test-time seen-set for small surface spaces
    base_id: Optional[str] = None  # set on extrapolation variants
    axis: Optional[ExtrapolationAxis] = None

    def param_dict(self) -> dict:
        return dict(self.params)

    @property
    def area(self) -> str:
        return self.module_id.split("/", 1)[0]

    @property
    def name(self) -> str:
        return self.module_id.split("/", 1)[1]


# --------------------------------------------------------------------------
# Structural (uncredited) choices
# --------------------------------------------------------------------------

def pick(stream: RandomStream, options: Sequence):
    """Structural choice: shapes the question but claims no credit."""
    return options[stream.randbelow(len(options))]


def allocate_digits(stream: RandomStream, total: float, parts: int,
                    lo: int = 1, hi: int = 12) -> list[int]:
    """Split ceil(total) decimal digits of entropy across `parts` draws."""
    need = max(parts * lo, math.ceil(total - 1e-12))
    out = [lo] * parts
    while sum(out) < need:
        open_slots = [i for i in range(parts) if out[i] < hi]
        if not open_slots:
            raise RetrySignal("digit envelope cannot reach the alpha target")
        out[pick(stream, open_slots)] += 1
    return out


# --------------------------------------------------------------------------
# Credited draws
# --------------------------------------------------------------------------

def draw_uint(stream: RandomStream, budget: EntropyBudget, digits: int,
              label: str = "uint") -> int:
    """Uniform over the first 10**digits positive integers."""
    size = 10 ** digits
    budget.credit(label, size)
    return stream.randbelow(size) + 1


def draw_int(stream: RandomStream, budget: EntropyBudget, digits: int,
             label: str = "int") -> int:
    """Uniform over +-[1, 10**digits] (zero excluded)."""
    size = 10 ** digits
    budget.credit(label, 2 * size)
    value = stream.randbelow(2 * size) - size
    return value if value < 0 else value + 1


def draw_signed_with_zero(stream: RandomStream, budget: EntropyBudget,
                          digits: int, label: str = "int0") -> int:
    size = 10 ** digits
    budget.credit(label, 2 * size + 1)
    return stream.randbelow(2 * size + 1) - size

def draw_range(stream: RandomStream, budget: EntropyBudget, lo: int, hi: int,
               label: str = "range") -> int:
    budget.credit(label, hi - lo + 1)
    return stream.randint(lo, hi)


def draw_excluding(stream: RandomStream, budget: EntropyBudget, lo: int,
                   hi: int, exclude: int, label: str = "range") -> int:
    """Uniform over [lo, hi] minus one known value, exact credit."""
    if not lo <= exclude <= hi:
        return draw_range(stream, budget, lo, hi, label)
    budget.credit(label, hi - lo)
    value = stream.randint(lo, hi - 1)
    return value + 1 if value >= exclude else value


def draw_decimal(stream: RandomStream, budget: EntropyBudget, digits: int,
                 scale: int, label: str = "decimal") -> ExactDecimal:
    """Signed decimal with `digits` digits of entropy at the given scale."""
    return ExactDecimal(draw_int(stream, budget, digits, label), scale)


def draw_reduced_fraction(stream: RandomStream, budget: EntropyBudget,
                          num_digits: int, max_den: int,
                          label: str = "fraction") -> Fraction:
    """A non-integral reduced fraction; numerator coprime to denominator."""
    from ..numeric import coprime_count
    den = draw_range(stream, budget, 2, max(3, max_den), label + "-den")
    size = 10 ** num_digits
    count = coprime_count(1, size, den)
    budget.credit(label + "-num", 2 * count)
    while True:
        value = draw_signless(stream, size)
        if math.gcd(value, den) == 1:
            sign = -1 if stream.randbelow(2) else 1
            return Fraction(sign * value, den)


def draw_signless(stream: RandomStream, size: int) -> int:
    return stream.randbelow(size) + 1


# primes: rejection over [2, limit]; credit uses the Rosser bound
# pi(x) > x/ln(x) for x >= 17, with exact counts for small limits.
_SMALL_PI = {10: 4, 100: 25, 1000: 168, 10_000: 1229, 100_000: 9592}


def prime_count_lower_bound(limit: int) -> float:
    if limit < 17:
        return float(sum(1 for n in range(2, limit + 1) if is_prime(n)))
    exact = [v for k, v in _SMALL_PI.items() if k <= limit]
    analytic = limit / math.log(limit)
    return max(analytic, float(max(exact, default=0)))


def draw_prime(stream: RandomStream, budget: EntropyBudget, limit: int,
               exclude: Sequence[int] = (), label: str = "prime") -> int:
    """Uniform prime in [2, limit] avoiding `exclude`, conservative credit."""
    bound = prime_count_lower_bound(limit) - len(exclude)
    if bound < 1:
        raise InvalidInputError("prime range too small")
    budget.credit_log10(label, math.log10(bound))
    banned = set(exclude)
    while True:
        n = stream.randint(2, limit)
        if n not in banned and is_prime(n):
            return n


def draw_composite(stream: RandomStream, budget: EntropyBudget, limit: int,
                   label: str = "composite") -> int:
    """Uniform composite in [4, limit]; evens alone witness the set size."""
    if limit < 4:
        raise InvalidInputError("no composites below 4")
    budget.credit(label, limit // 2 - 1)
    while True:
        n = stream.randint(4, limit)
        if n > 3 and not is_prime(n):
            return n


def squarefree_numbers(limit: int) -> list[int]:
    flags = [True] * (limit + 1)
    d = 2
    while d * d <= limit:
        for k in range(d * d, limit + 1, d * d):
            flags[k] = False
        d += 1
    return [n for n in range(2, limit + 1) if flags[n]]


def draw_squarefree(stream: RandomStream, budget: EntropyBudget, limit: int,
                    label: str = "squarefree") -> int:
    """Uniform square-free integer in [2, limit], exact credit."""
    options = squarefree_numbers(limit)
    return options[draw_from_index(stream, budget, len(options), label)]


def draw_from_index(stream: RandomStream, budget: EntropyBudget, size: int,
                    label: str) -> int:
    budget.credit(label, size)
    return stream.randbelow(size)


# --------------------------------------------------------------------------
# Words for counts, ordinals and places
# --------------------------------------------------------------------------

NUMBER_WORDS = (
    "zero one two three four five six seven eight nine ten eleven twelve "
    "thirteen fourteen fifteen sixteen seventeen eighteen nineteen twenty"
).split()

ORDINAL_WORDS = (
    "zeroth first second third fourth fifth sixth seventh eighth ninth "
    "tenth eleventh twelfth thirteenth fourteenth fifteenth sixteenth "
    "seventeenth eighteenth nineteenth twentieth"
).split()

WORD_TO_NUMBER = {w: i for i, w in enumerate(NUMBER_WORDS)}
ORDINAL_TO_NUMBER = {w: i for i, w in enumerate(ORDINAL_WORDS)}


def count_word(n: int) -> str:
    return NUMBER_WORDS[n]


def ordinal_word(n: int) -> str:
    return ORDINAL_WORDS[n]


def render_answer(entity) -> str:
    return format_entity(entity)
