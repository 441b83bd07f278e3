"""Closed-form solvers: linear systems, sequences, comparisons, measurement,
and sampling-without-replacement probability. All arithmetic is exact."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .expressions import ContractViolation, Expression, parse
from .numeric import InvalidInputError, Numeric, as_fraction
from .symbolic import Polynomial, format_polynomial, to_polynomial


# --------------------------------------------------------------------------
# Linear equations
# --------------------------------------------------------------------------

def solve_linear_1d(left: Expression, right: Expression, var: str,
                    env: Optional[dict] = None) -> Fraction:
    """The unique solution of left = right, linear in var after expansion."""
    p = to_polynomial(left, env) - to_polynomial(right, env)
    if p.degree_in(var) != 1 or p.variables() - {var}:
        raise ContractViolation("equation is not linear in the unknown")
    coeffs = p.univariate_coefficients(var)
    return -coeffs[0] / coeffs[1]


@dataclass(frozen=True)
class LinearSystem2:
    """a*x + b*y = e and c*x + d*y = f with integer coefficients."""

    a: int
    b: int
    c: int
    d: int
    e: int
    f: int
    x: str = "x"
    y: str = "y"

    @property
    def determinant(self) -> int:
        return self.a * self.d - self.b * self.c

    def solve(self) -> dict[str, Fraction]:
        det = self.determinant
        if det == 0:
            raise ContractViolation("singular linear system")
        return {self.x: Fraction(self.e * self.d - self.b * self.f, det),
                self.y: Fraction(self.a * self.f - self.e * self.c, det)}


def solve_linear_2d(system: LinearSystem2, target: str) -> Fraction:
    solution = system.solve()
    if target not in solution:
        raise InvalidInputError(f"unknown variable {target!r}")
    return solution[target]


# --------------------------------------------------------------------------
# Integer sequences via finite differences
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SequenceSpec:
    """Minimal-degree polynomial interpolant of terms at n = 1, 2, ..."""

    polynomial: Polynomial  # in the variable `n`
    term_count: int

    def term(self, n: int) -> Fraction:
        total = Fraction(0)
        coeffs = self.polynomial.univariate_coefficients("n") or [Fraction(0)]
        for c in reversed(coeffs):
            total = total * n + c
        return total

    def next_term(self) -> Fraction:
        return self.term(self.term_count + 1)

    def nth_term_expression(self) -> str:
        return format_polynomial(self.polynomial)


def fit_sequence(terms: Sequence[int]) -> SequenceSpec:
    """Interpolate with the minimal-degree polynomial (Newton forward)."""
    if len(terms) < 2:
        raise InvalidInputError("need at least two terms")
    rows = [[Fraction(t) for t in terms]]
    while any(rows[-1]) and len(rows[-1]) > 1:
        prev = rows[-1]
        rows.append([prev[i + 1] - prev[i] for i in range(len(prev) - 1)])
    # p(n) = sum_j diff_j * C(n-1, j)
    poly = Polynomial()
    binom = Polynomial.constant(1)
    for j, row in enumerate(rows):
        if j >= len(terms):
            break
        poly = poly + binom.scale(row[0])
        step = Polynomial.univariate("n", [Fraction(-j - 1), Fraction(1)])
        binom = binom * step.scale(Fraction(1, j + 1))
    return SequenceSpec(poly, len(terms))


# --------------------------------------------------------------------------
# Comparisons over exact numbers that keep their surface form
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceNumber:
    """An exact value plus the exact text it appeared as in a question."""

    surface: str
    value: Fraction

    @staticmethod
    def of(x: Numeric | str, env: Optional[dict] = None) -> "SurfaceNumber":
        if isinstance(x, SurfaceNumber):
            return x
        if isinstance(x, str):
            from .expressions import evaluate
            return SurfaceNumber(x, evaluate(parse(x), env))
        from .symbolic import format_entity
        return SurfaceNumber(format_entity(x), as_fraction(x))


def compare_pair(a: SurfaceNumber, b: SurfaceNumber) -> int:
    """Three-way ordering by cross multiplication: -1, 0 or 1."""
    lhs = a.value.numerator * b.value.denominator
    rhs = b.value.numerator * a.value.denominator
    return (lhs > rhs) - (lhs < rhs)


def sort_numbers(xs: Sequence[SurfaceNumber], descending: bool = False) -> list[SurfaceNumber]:
    return sorted(xs, key=lambda s: s.value, reverse=descending)


def closest_to(target: Fraction, xs: Sequence[SurfaceNumber]) -> SurfaceNumber:
    if not xs:
        raise InvalidInputError("empty list")
    best = xs[0]
    for x in xs[1:]:
        if abs(x.value - target) < abs(best.value - target):
            best = x
    return best


def kth_extreme(xs: Sequence[SurfaceNumber], k: int, biggest: bool) -> SurfaceNumber:
    if not 1 <= k <= len(xs):
        raise InvalidInputError(f"k={k} outside 1..{len(xs)}")
    return sort_numbers(xs, descending=biggest)[k - 1]


# --------------------------------------------------------------------------
# Measurement
# --------------------------------------------------------------------------

# factor converting one unit into the family's base unit
UNIT_FAMILIES: dict[str, dict[str, Fraction]] = {
    "length": {
        "millimetres": Fraction(1),
        "centimetres": Fraction(10),
        "metres": Fraction(1000),
        "kilometres": Fraction(1_000_000),
    },
    "mass": {
        "milligrams": Fraction(1),
        "grams": Fraction(1000),
        "kilograms": Fraction(1_000_000),
        "tonnes": Fraction(10 ** 9),
    },
    "volume": {
        "millilitres": Fraction(1),
        "centilitres": Fraction(10),
        "litres": Fraction(1000),
    },
    "time": {
        "seconds": Fraction(1),
        "minutes": Fraction(60),
        "hours": Fraction(3600),
        "days": Fraction(86400),
        "weeks": Fraction(604800),
    },
}

UNIT_SINGULAR = {
    "millimetres": "millimetre", "centimetres": "centimetre",
    "metres": "metre", "kilometres": "kilometre",
    "milligrams": "milligram", "grams": "gram",
    "kilograms": "kilogram", "tonnes": "tonne",
    "millilitres": "millilitre", "centilitres": "centilitre",
    "litres": "litre",
    "seconds": "second", "minutes": "minute", "hours": "hour",
    "days": "day", "weeks": "week",
}


def unit_family(unit: str) -> str:
    for family, table in UNIT_FAMILIES.items():
        if unit in table:
            return family
    raise InvalidInputError(f"unknown unit {unit!r}")


@dataclass(frozen=True)
class UnitQuantity:
    magnitude: Fraction
    unit: str

    def __post_init__(self):
        unit_family(self.unit)
        object.__setattr__(self, "magnitude", Fraction(self.magnitude))


def convert_units(q: UnitQuantity, to_unit: str) -> UnitQuantity:
    family = unit_family(q.unit)
    if unit_family(to_unit) != family:
        raise InvalidInputError(
            f"cannot convert {q.unit} to {to_unit}: different families")
    table = UNIT_FAMILIES[family]
    return UnitQuantity(q.magnitude * table[q.unit] / table[to_unit], to_unit)


@dataclass(frozen=True)
class ClockTime:
    """12-hour clock time, canonical form 'H:MM AM' / 'H:MM PM'."""

    hour: int  # 1..12
    minute: int
    meridiem: str  # AM or PM

    def __post_init__(self):
        if not (1 <= self.hour <= 12 and 0 <= self.minute <= 59
                and self.meridiem in ("AM", "PM")):
            raise InvalidInputError(f"bad clock time {self}")

    @staticmethod
    def from_minutes(total: int) -> "ClockTime":
        total %= 24 * 60
        hour24, minute = divmod(total, 60)
        meridiem = "AM" if hour24 < 12 else "PM"
        hour = hour24 % 12 or 12
        return ClockTime(hour, minute, meridiem)

    def minutes_since_midnight(self) -> int:
        hour24 = self.hour % 12 + (12 if self.meridiem == "PM" else 0)
        return hour24 * 60 + self.minute

    @staticmethod
    def parse(text: str) -> "ClockTime":
        try:
            clock, meridiem = text.split()
            hour, minute = clock.split(":")
            return ClockTime(int(hour), int(minute), meridiem)
        except (ValueError, TypeError) as err:
            raise InvalidInputError(f"bad clock time {text!r}") from err

    def __str__(self) -> str:
        return f"{self.hour}:{self.minute:02d} {self.meridiem}"


def time_between(t1: ClockTime, t2: ClockTime) -> int:
    """Minutes from t1 forward to t2 within one 12-hour cycle."""
    delta = t2.minutes_since_midnight() - t1.minutes_since_midnight()
    return delta % (24 * 60)


def time_shift(t: ClockTime, minutes: int) -> ClockTime:
    return ClockTime.from_minutes(t.minutes_since_midnight() + minutes)


# --------------------------------------------------------------------------
# Sampling without replacement from a bag of letters
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LetterBag:
    counts: tuple[tuple[str, int], ...]  # sorted letters, positive counts

    @staticmethod
    def of(counts: Mapping[str, int]) -> "LetterBag":
        for letter, n in counts.items():
            if n <= 0 or not letter.islower():
                raise InvalidInputError(f"bad bag entry {letter!r}: {n}")
        return LetterBag(tuple(sorted(counts.items())))

    @staticmethod
    def from_letters(letters: Iterable[str]) -> "LetterBag":
        counts: dict[str, int] = {}
        for ch in letters:
            counts[ch] = counts.get(ch, 0) + 1
        return LetterBag.of(counts)

    def count(self, letter: str) -> int:
        return dict(self.counts).get(letter, 0)

    @property
    def total(self) -> int:
        return sum(n for _, n in self.counts)

    def render_counts(self) -> str:
        inner = ", ".join(f"{letter}: {n}" for letter, n in self.counts)
        return "{" + inner + "}"


def prob_sequence_swr(bag: LetterBag, seq: Sequence[str]) -> Fraction:
    """Probability that drawing |seq| letters yields exactly seq in order."""
    if len(seq) > bag.total:
        raise InvalidInputError("sample longer than the bag")
    remaining = dict(bag.counts)
    total = bag.total
    prob = Fraction(1)
    for letter in seq:
        have = remaining.get(letter, 0)
        if have == 0:
            return Fraction(0)
        prob *= Fraction(have, total)
        remaining[letter] = have - 1
        total -= 1
    return prob


def prob_level_set_swr(bag: LetterBag, want: Mapping[str, int]) -> Fraction:
    """Multivariate hypergeometric probability of the given letter counts."""
    k = sum(want.values())
    if k > bag.total:
        raise InvalidInputError("sample longer than the bag")
    numerator = 1
    for letter, n in want.items():
        numerator *= math.comb(bag.count(letter), n)
    return Fraction(numerator, math.comb(bag.total, k))
