"""Exact integer, rational and decimal arithmetic plus elementary number theory.

Everything here is exact: Python ints are unbounded, rationals are
``fractions.Fraction``, and decimals are kept as an unscaled integer with a
power-of-ten scale.  No float ever participates in an answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction


class InvalidInputError(ValueError):
    """An operation was called outside its documented domain."""


# --------------------------------------------------------------------------
# Exact decimals
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ExactDecimal:
    """A decimal number unscaled / 10**scale, canonical and exact.

    Canonical form: scale >= 0, and when scale > 0 the unscaled part is not
    divisible by 10.  Zero is always (0, 0), so "-0" cannot exist.
    """

    unscaled: int
    scale: int = 0

    def __post_init__(self):
        if self.scale < 0:
            raise InvalidInputError("scale must be non-negative")
        unscaled, scale = self.unscaled, self.scale
        if unscaled == 0:
            scale = 0
        else:
            while scale > 0 and unscaled % 10 == 0:
                unscaled //= 10
                scale -= 1
        object.__setattr__(self, "unscaled", unscaled)
        object.__setattr__(self, "scale", scale)

    @staticmethod
    def from_string(text: str) -> "ExactDecimal":
        text = text.strip()
        sign = 1
        if text.startswith("-"):
            sign, text = -1, text[1:]
        elif text.startswith("+"):
            text = text[1:]
        if "." in text:
            whole, frac = text.split(".", 1)
        else:
            whole, frac = text, ""
        if not (whole + frac).isdigit() or (not whole and not frac):
            raise InvalidInputError(f"not a decimal literal: {text!r}")
        return ExactDecimal(sign * int((whole or "0") + frac), len(frac))

    def to_fraction(self) -> Fraction:
        return Fraction(self.unscaled, 10 ** self.scale)

    @property
    def is_integer(self) -> bool:
        return self.scale == 0

    def with_scale_at_least(self, scale: int) -> tuple[int, int]:
        """Return (unscaled, scale') with scale' = max(scale, self.scale)."""
        s = max(scale, self.scale)
        return self.unscaled * 10 ** (s - self.scale), s

    def __add__(self, other: "ExactDecimal") -> "ExactDecimal":
        s = max(self.scale, other.scale)
        a, _ = self.with_scale_at_least(s)
        b, _ = other.with_scale_at_least(s)
        return ExactDecimal(a + b, s)

    def __sub__(self, other: "ExactDecimal") -> "ExactDecimal":
        return self + (-other)

    def __mul__(self, other: "ExactDecimal") -> "ExactDecimal":
        return ExactDecimal(self.unscaled * other.unscaled, self.scale + other.scale)

    def __neg__(self) -> "ExactDecimal":
        return ExactDecimal(-self.unscaled, self.scale)

    def __abs__(self) -> "ExactDecimal":
        return ExactDecimal(abs(self.unscaled), self.scale)

    def compare(self, other: "ExactDecimal") -> int:
        d = (self - other).unscaled
        return (d > 0) - (d < 0)

    def __str__(self) -> str:
        if self.scale == 0:
            return str(self.unscaled)
        digits = str(abs(self.unscaled)).rjust(self.scale + 1, "0")
        sign = "-" if self.unscaled < 0 else ""
        return f"{sign}{digits[:-self.scale]}.{digits[-self.scale:]}"


Numeric = Union[int, Fraction, ExactDecimal]


def as_fraction(x: Numeric) -> Fraction:
    if isinstance(x, ExactDecimal):
        return x.to_fraction()
    return Fraction(x)


def fraction_to_decimal(q: Fraction) -> ExactDecimal:
    """Convert a rational with 10-smooth denominator to an exact decimal."""
    den = q.denominator
    scale = 0
    while den % 2 == 0:
        den //= 2
        scale += 1
    scale2 = 0
    while den % 5 == 0:
        den //= 5
        scale2 += 1
    if den != 1:
        raise InvalidInputError(f"{q} has no finite decimal expansion")
    scale = max(scale, scale2)
    return ExactDecimal(q.numerator * 10 ** scale // q.denominator, scale)


# --------------------------------------------------------------------------
# Base-b numerals
# --------------------------------------------------------------------------

_DIGITS = "0123456789abcdef"


@dataclass(frozen=True)
class BaseNumeral:
    """An integer written in a radix between 2 and 16, lowercase digits."""

    digits: str
    radix: int
    negative: bool = False

    def __post_init__(self):
        if not 2 <= self.radix <= 16:
            raise InvalidInputError(f"radix {self.radix} outside [2, 16]")
        if not self.digits or (len(self.digits) > 1 and self.digits[0] == "0"):
            raise InvalidInputError(f"non-canonical digits {self.digits!r}")
        for ch in self.digits:
            if ch not in _DIGITS[: self.radix]:
                raise InvalidInputError(
                    f"digit {ch!r} not valid in base {self.radix}")
        if self.negative and self.digits == "0":
            raise InvalidInputError("negative zero numeral")

    @staticmethod
    def parse(text: str, radix: int) -> "BaseNumeral":
        negative = text.startswith("-")
        return BaseNumeral(text.lstrip("-"), radix, negative)

    @staticmethod
    def from_int(value: int, radix: int) -> "BaseNumeral":
        if not 2 <= radix <= 16:
            raise InvalidInputError(f"radix {radix} outside [2, 16]")
        mag = abs(value)
        if mag == 0:
            return BaseNumeral("0", radix)
        out = []
        while mag:
            mag, d = divmod(mag, radix)
            out.append(_DIGITS[d])
        return BaseNumeral("".join(reversed(out)), radix, value < 0)

    def to_int(self) -> int:
        value = 0
        for ch in self.digits:
            value = value * self.radix + _DIGITS.index(ch)
        return -value if self.negative else value

    def __str__(self) -> str:
        return ("-" if self.negative else "") + self.digits


def base_convert(x: BaseNumeral, to_radix: int) -> BaseNumeral:
    return BaseNumeral.from_int(x.to_int(), to_radix)


# --------------------------------------------------------------------------
# Number theory
# --------------------------------------------------------------------------

def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def lcm(a: int, b: int) -> int:
    return math.lcm(a, b)


# Deterministic Miller-Rabin witness set, exact for n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    """Deterministic primality test (exact below 3.3e24)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n >= _MR_LIMIT:
        raise InvalidInputError(f"{n} too large for deterministic test")
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n, deterministic parameter sweep."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise InvalidInputError(f"failed to factor {n}")


def prime_factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization as (prime, multiplicity), primes increasing."""
    if n < 2:
        raise InvalidInputError("prime factorization needs n >= 2")
    factors: dict[int, int] = {}

    def grow(m: int) -> None:
        if m == 1:
            return
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            return
        d = _pollard_rho(m)
        grow(d)
        grow(m // d)

    # trial division by a small wheel first; rho only for large cofactors
    for p in _SMALL_PRIMES:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 49
    while d * d <= n and d < 10_000:
        if n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        else:
            d += 2
    if n > 1:
        grow(n)
    return sorted(factors.items())


def prime_factor_list(n: int) -> list[int]:
    """Prime factors with multiplicity, e.g. 44 -> [2, 2, 11]."""
    return [p for p, k in prime_factorize(n) for _ in range(k)]


def div_remainder(a: int, b: int) -> tuple[int, int]:
    """Quotient and remainder with 0 <= r < b; b must be positive."""
    if b <= 0:
        raise InvalidInputError("divisor must be positive")
    return divmod(a, b)


def is_factor(d: int, n: int) -> bool:
    if d == 0:
        raise InvalidInputError("zero cannot be a factor")
    return n % d == 0


def nearest_integer_root(n: int, k: int) -> int:
    """The integer m minimizing |m**k - n| (ties cannot occur)."""
    if n < 0:
        raise InvalidInputError("radicand must be non-negative")
    if k < 2:
        raise InvalidInputError("root order must be >= 2")
    lo = _integer_kth_root(n, k)
    return lo if n - lo ** k <= (lo + 1) ** k - n else lo + 1


def _integer_kth_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) computed exactly."""
    if n == 0:
        return 0
    x = int(round(n ** (1.0 / k)))
    while x > 0 and x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def coprime_count(lo: int, hi: int, m: int) -> int:
    """Exact count of k in [lo, hi] with gcd(k, m) = 1, via inclusion-exclusion."""
    if m == 0:
        raise InvalidInputError("m must be nonzero")
    primes = [p for p, _ in prime_factorize(abs(m))] if abs(m) > 1 else []

    def count_upto(x: int) -> int:
        if x < 0:
            return -count_upto(-x - 1) if x != -1 else 0
        total = 0
        for mask in range(1 << len(primes)):
            d = 1
            bits = 0
            for i, p in enumerate(primes):
                if mask >> i & 1:
                    d *= p
                    bits += 1
            total += (-1) ** bits * (x // d)
        return total

    return count_upto(hi) - count_upto(lo - 1)


# --------------------------------------------------------------------------
# Digits, places, rounding
# --------------------------------------------------------------------------

# place index: 0 = units, 1 = tens, ... ; -1 = tenths, -2 = hundredths, ...
PLACE_NAMES = {
    0: "units",
    1: "tens",
    2: "hundreds",
    3: "thousands",
    4: "ten thousands",
    5: "hundred thousands",
    6: "millions",
    7: "ten millions",
    8: "hundred millions",
    9: "billions",
    10: "ten billions",
    11: "hundred billions",
    -1: "tenths",
    -2: "hundredths",
    -3: "thousandths",
    -4: "ten thousandths",
    -5: "hundred thousandths",
    -6: "millionths",
}
PLACE_BY_NAME = {name: idx for idx, name in PLACE_NAMES.items()}


def place_value(x: ExactDecimal, place: int) -> int:
    """The single digit of x at the given place (0 beyond the numeral)."""
    shifted, scale = x.with_scale_at_least(max(0, -place))
    # digit at 10**place of |x|
    return abs(shifted) // 10 ** (place + scale) % 10


def round_to_place(x: ExactDecimal, place: int) -> ExactDecimal:
    """Round to the nearest 10**(-place), halves away from zero."""
    q = x.to_fraction() * Fraction(10) ** place
    whole, rem = divmod(abs(q.numerator), q.denominator)
    if 2 * rem >= q.denominator:
        whole += 1
    if q < 0:
        whole = -whole
    return ExactDecimal(whole * 10 ** max(0, -place), max(0, place))
