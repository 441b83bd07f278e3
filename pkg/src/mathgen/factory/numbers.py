"""Number-theory question modules (the "numbers" area)."""

from __future__ import annotations

import math
import re
from fractions import Fraction

from ..numeric import (BaseNumeral, ExactDecimal, PLACE_BY_NAME, PLACE_NAMES,
                       base_convert, gcd, is_factor, is_prime, lcm,
                       place_value, prime_factor_list, round_to_place)
from ..sampling import EntropyBudget
from .base import (ExtrapolationAxis, ModuleSpec, RetrySignal, allocate_digits,
                   draw_composite, draw_excluding, draw_int, draw_prime,
                   draw_range, draw_uint, pick, prime_count_lower_bound,
                   NUMBER_WORDS, WORD_TO_NUMBER)


def _composed_int(ctx):
    """The (surface, value) pair from a producer, if one was built."""
    return ctx.take_composed()


# --------------------------------------------------------------------------
# gcd / lcm share their backward construction: a = g*m, b = g*n, gcd(m,n)=1
# --------------------------------------------------------------------------

def _coprime_pair(ctx, d_m: int, d_n: int) -> tuple[int, int]:
    from ..numeric import coprime_count
    m = draw_uint(ctx.stream, ctx.budget, d_m, "m")
    limit = 10 ** d_n
    count = coprime_count(1, limit, m)
    ctx.budget.credit("n", count)
    while True:
        n = ctx.stream.randint(1, limit)
        if math.gcd(m, n) == 1:
            return m, n


def gen_gcd(ctx):
    composed = _composed_int(ctx)
    if composed is not None:
        surface, u = composed
        if u == 0:
            raise RetrySignal("gcd with zero entity")
        other = draw_uint(ctx.stream, ctx.budget,
                          max(1, math.ceil(ctx.budget.remaining)), "b")
        answer = gcd(u, other)
        pair = pick(ctx.stream, ((surface, other), (other, surface)))
    else:
        dm, dn = allocate_digits(ctx.stream, 2 * ctx.budget.remaining / 3,
                                 2, lo=1, hi=6)
        m, n = _coprime_pair(ctx, dm, dn)
        dg = min(8, max(1, math.ceil(ctx.budget.remaining)))
        g = draw_uint(ctx.stream, ctx.budget, dg, "g")
        answer = g
        pair = pick(ctx.stream, ((g * m, g * n), (g * n, g * m)))
    sentence = pick(ctx.stream, (
        "Calculate the greatest common divisor of {a} and {b}.",
        "What is the greatest common divisor of {a} and {b}?",
        "Calculate the highest common factor of {a} and {b}.",
        "What is the greatest common factor of {a} and {b}?",
    )).format(a=pair[0], b=pair[1])
    return sentence, answer


def gen_lcm(ctx):
    composed = _composed_int(ctx)
    if composed is not None:
        surface, u = composed
        if u == 0:
            raise RetrySignal("lcm with zero entity")
        other = draw_uint(ctx.stream, ctx.budget,
                          max(1, math.ceil(ctx.budget.remaining)), "b")
        answer = lcm(u, other)
        pair = pick(ctx.stream, ((surface, other), (other, surface)))
    else:
        dm, dn = allocate_digits(ctx.stream, 2 * ctx.budget.remaining / 3,
                                 2, lo=1, hi=5)
        m, n = _coprime_pair(ctx, dm, dn)
        dg = min(6, max(1, math.ceil(ctx.budget.remaining)))
        g = draw_uint(ctx.stream, ctx.budget, dg, "g")
        answer = g * m * n
        pair = pick(ctx.stream, ((g * m, g * n), (g * n, g * m)))
    sentence = pick(ctx.stream, (
        "Calculate the lowest common multiple of {a} and {b}.",
        "What is the smallest common multiple of {a} and {b}?",
        "Find the least common multiple of {a} and {b}.",
    )).format(a=pair[0], b=pair[1])
    return sentence, answer


# --------------------------------------------------------------------------
# div_remainder
# --------------------------------------------------------------------------

def gen_div_remainder(ctx):
    composed = _composed_int(ctx)
    if composed is not None:
        surface, u = composed
        db = max(1, math.ceil(ctx.budget.remaining))
        b = draw_uint(ctx.stream, ctx.budget, db, "b") + 1
        answer = u % b
        a_text = surface
    else:
        db = max(1, math.ceil(ctx.budget.remaining / 3))
        b = draw_uint(ctx.stream, ctx.budget, db, "b") + 1
        r = draw_range(ctx.stream, ctx.budget, 0, b - 1, "r")
        dq = min(10, max(1, math.ceil(ctx.budget.remaining)))
        q = draw_uint(ctx.stream, ctx.budget, dq, "q")
        a_text = str(q * b + r)
        answer = r
    sentence = pick(ctx.stream, (
        "Calculate the remainder when {a} is divided by {b}.",
        "What is the remainder when {a} is divided by {b}?",
    )).format(a=a_text, b=b)
    return sentence, answer


# --------------------------------------------------------------------------
# is_factor
# --------------------------------------------------------------------------

def gen_is_factor(ctx):
    composed = _composed_int(ctx)
    dd = pick(ctx.stream, (1, 1, 2))
    d = draw_uint(ctx.stream, ctx.budget, dd, "d") + 1
    if composed is not None:
        surface, u = composed
        if pick(ctx.stream, (False, True)):
            k = draw_uint(ctx.stream, ctx.budget,
                          max(1, math.ceil(ctx.budget.remaining)), "k")
            multiple = pick(ctx.stream, (False, True))
            ctx.budget.credit("y-branch", 2)
            y = d * k if multiple else d * k + draw_range(
                ctx.stream, ctx.budget, 1, max(1, d - 1), "offset")
            sentence = f"Is {d} a factor of both {surface} and {y}?"
            answer = is_factor(d, u) and is_factor(d, y)
        else:
            sentence = pick(ctx.stream, (
                "Is {d} a factor of {n}?", "Does {d} divide {n}?",
            )).format(d=d, n=surface)
            answer = is_factor(d, u)
        return sentence, answer
    ctx.budget.credit("branch", 2)
    wanted = pick(ctx.stream, (False, True))
    dk = max(1, math.ceil(ctx.budget.remaining))
    k = draw_uint(ctx.stream, ctx.budget, dk, "k")
    if wanted:
        n = d * k
    else:
        n = d * k + draw_range(ctx.stream, ctx.budget, 1, max(1, d - 1), "r")
        if n % d == 0:  # d == 1 cannot produce a non-multiple
            raise RetrySignal("no non-multiple available")
    sentence = pick(ctx.stream, (
        "Is {d} a factor of {n}?",
        "Does {d} divide {n}?",
        "Is {n} a multiple of {d}?",
    )).format(d=d, n=n)
    return sentence, is_factor(d, n)


# --------------------------------------------------------------------------
# is_prime
# --------------------------------------------------------------------------

def _prime_branch_limit(target: float) -> int:
    for k in range(2, 18):
        limit = 10 ** k
        if math.log10(prime_count_lower_bound(limit)) >= target:
            return limit
    raise RetrySignal("alpha out of range for primality questions")


def gen_is_prime(ctx):
    composed = _composed_int(ctx)
    if composed is not None:
        surface, u = composed
        sentence = pick(ctx.stream, (
            "Is {n} a prime number?", "Is {n} prime?")).format(n=surface)
        return sentence, u >= 2 and is_prime(u)
    ctx.budget.credit("branch", 2)
    want_prime = pick(ctx.stream, (False, True))
    target = ctx.budget.remaining
    if want_prime:
        n = draw_prime(ctx.stream, ctx.budget, _prime_branch_limit(target))
    else:
        limit = 10 ** max(2, math.ceil(target + math.log10(2) + 0.1))
        n = draw_composite(ctx.stream, ctx.budget, limit)
    composite_phrasing = pick(ctx.stream, (False, False, True))
    if composite_phrasing:
        sentence = f"Is {n} composite?"
        answer = not is_prime(n)
    else:
        sentence = pick(ctx.stream, (
            "Is {n} a prime number?", "Is {n} prime?")).format(n=n)
        answer = is_prime(n)
    return sentence, answer


# --------------------------------------------------------------------------
# list_prime_factors
# --------------------------------------------------------------------------

def gen_list_prime_factors(ctx):
    composed = _composed_int(ctx)
    if composed is not None:
        surface, u = composed
        if u < 2:
            raise RetrySignal("entity too small to factor")
        sentence = pick(ctx.stream, (
            "What are the prime factors of {n}?",
            "List the prime factors of {n}.",
        )).format(n=surface)
        return sentence, prime_factor_list(u)
    count = pick(ctx.stream, (1, 2, 2, 3))
    share = max(1.0, (ctx.budget.remaining + math.log10(math.factorial(count))
                      + 0.2) / count)
    limit = _prime_branch_limit(share)
    primes: list[int] = []
    for i in range(count):
        discount = math.factorial(count) if i == count - 1 else 1
        bound = (prime_count_lower_bound(limit) - i) / discount
        if bound < 1:
            raise RetrySignal("prime pool too small")
        ctx.budget.credit_log10(f"p{i}", math.log10(bound))
        while True:
            p = ctx.stream.randint(2, limit)
            if p not in primes and is_prime(p):
                primes.append(p)
                break
    n = 1
    for p in primes:
        n *= p ** pick(ctx.stream, (1, 1, 1, 2))
    sentence = pick(ctx.stream, (
        "What are the prime factors of {n}?",
        "List the prime factors of {n}.",
        "Give the prime factors of {n}.",
    )).format(n=n)
    return sentence, prime_factor_list(n)


# --------------------------------------------------------------------------
# place_value
# --------------------------------------------------------------------------

def gen_place_value(ctx):
    lo, hi = ctx.param("digits", (2, 11))
    composed = _composed_int(ctx)
    if composed is not None:
        surface, u = composed
        if abs(u) < 10:
            raise RetrySignal("entity too short for place questions")
        x = ExactDecimal(u)
        positions = list(range(len(str(abs(u)))))
        shown = surface
    else:
        digits = min(hi, max(lo, math.ceil(ctx.budget.remaining)))
        decimal_mode = pick(ctx.stream, (False, False, True))
        if decimal_mode:
            scale = pick(ctx.stream, (1, 2, 3, 4))
            x = ExactDecimal(draw_uint(ctx.stream, ctx.budget, digits, "x"),
                             scale)
            if x.scale == 0:
                raise RetrySignal("decimal collapsed to an integer")
            int_digits = len(str(abs(x.unscaled))) - x.scale
            positions = list(range(-x.scale, max(0, int_digits)))
        else:
            x = ExactDecimal(draw_uint(ctx.stream, ctx.budget, digits, "x"))
            positions = list(range(len(str(x.unscaled))))
        shown = str(x)
    place = pick(ctx.stream, [p for p in positions if p in PLACE_NAMES])
    sentence = pick(ctx.stream, (
        "What is the {p} digit of {n}?",
        "Give the {p} digit of {n}.",
    )).format(p=PLACE_NAMES[place], n=shown)
    return sentence, place_value(x, place)


# --------------------------------------------------------------------------
# round_number
# --------------------------------------------------------------------------

_TENS_WORDS = {1: "ten", 2: "hundred", 3: "thousand", 4: "ten thousand",
               5: "hundred thousand", 6: "million"}
_TENS_BY_WORD = {w: k for k, w in _TENS_WORDS.items()}


def gen_round_number(ctx):
    lo, hi = ctx.param("digits", (1, 10))
    composed = _composed_int(ctx)
    if composed is not None:
        surface, u = composed
        k = pick(ctx.stream, [k for k in (1, 2, 3)
                              if 10 ** k <= max(2, abs(u))] or [1])
        sentence = pick(ctx.stream, (
            "Round {x} to the nearest {w}.",
            "What is {x} rounded to the nearest {w}?",
        )).format(x=surface, w=_TENS_WORDS[k])
        return sentence, round_to_place(ExactDecimal(u), -k)
    dm = min(hi, max(lo, math.ceil(ctx.budget.remaining)))
    m = draw_int(ctx.stream, ctx.budget, dm, "m")
    decimal_mode = pick(ctx.stream, (False, True))
    if decimal_mode:
        place = pick(ctx.stream, (1, 2, 3, 4))
        extra = pick(ctx.stream, (1, 2, 3))
        half = 10 ** extra // 2
        e = draw_range(ctx.stream, ctx.budget, -(half - 1), half - 1, "e")
        x = ExactDecimal(m * 10 ** extra + e, place + extra)
        answer = round_to_place(x, place)
        if answer != ExactDecimal(m, place):
            raise RetrySignal("rounding seed mismatch")
        word = NUMBER_WORDS[place]
        unit = "decimal place" if place == 1 else "decimal places"
        sentence = pick(ctx.stream, (
            "Give {x} to {w} {u}.",
            "Round {x} to {w} {u}.",
            "What is {x} rounded to {w} {u}?",
        )).format(x=x, w=word, u=unit)
    else:
        k = pick(ctx.stream, (1, 2, 3, 4, 5, 6))
        half = 10 ** k // 2
        e = draw_range(ctx.stream, ctx.budget, -(half - 1), half - 1, "e")
        x = ExactDecimal(m * 10 ** k + e)
        answer = round_to_place(x, -k)
        sentence = pick(ctx.stream, (
            "Round {x} to the nearest {w}.",
            "What is {x} rounded to the nearest {w}?",
        )).format(x=x, w=_TENS_WORDS[k])
    return sentence, answer


# --------------------------------------------------------------------------
# base_conversion
# --------------------------------------------------------------------------

def gen_base_conversion(ctx):
    dv = max(1, math.ceil(ctx.budget.remaining - 2.6))
    from_base = draw_range(ctx.stream, ctx.budget, 2, 16, "from")
    to_base = draw_excluding(ctx.stream, ctx.budget, 2, 16, from_base, "to")
    value = draw_int(ctx.stream, ctx.budget, dv, "value")
    shown = BaseNumeral.from_int(value, from_base)
    answer = BaseNumeral.from_int(value, to_base)
    sentence = pick(ctx.stream, (
        "Give {x} (base {b}) in base {c}.",
        "What is {x} (base {b}) in base {c}?",
        "Convert {x} (base {b}) to base {c}.",
    )).format(x=shown, b=from_base, c=to_base)
    return sentence, str(answer)


# --------------------------------------------------------------------------
# Module table
# --------------------------------------------------------------------------

MODULES = [
    ModuleSpec("numbers/base_conversion", gen_base_conversion),
    ModuleSpec("numbers/div_remainder", gen_div_remainder, composable="integer"),
    ModuleSpec("numbers/gcd", gen_gcd, composable="integer"),
    ModuleSpec("numbers/is_factor", gen_is_factor, composable="integer"),
    ModuleSpec("numbers/is_prime", gen_is_prime, composable="integer",
               dedupe=True),
    ModuleSpec("numbers/lcm", gen_lcm, composable="integer"),
    ModuleSpec("numbers/list_prime_factors", gen_list_prime_factors,
               composable="integer"),
    ModuleSpec("numbers/place_value", gen_place_value, composable="integer"),
    ModuleSpec("numbers/round_number", gen_round_number, composable="integer"),
]

EXTRAPOLATION_MODULES = [
    ModuleSpec("numbers/round_number_big", gen_round_number,
               params=(("digits", (11, 20)),),
               base_id="numbers/round_number",
               axis=ExtrapolationAxis("digits", 10, 11, 20)),
    ModuleSpec("numbers/place_value_big", gen_place_value,
               params=(("digits", (12, 22)),),
               base_id="numbers/place_value",
               axis=ExtrapolationAxis("digits", 11, 12, 22)),
]


# --------------------------------------------------------------------------
# Text matchers
# --------------------------------------------------------------------------

def _int_of(text: str, env) -> int:
    from ..expressions import evaluate, parse
    value = evaluate(parse(text), env)
    if value.denominator != 1:
        raise RetrySignal("expected an integer slot")
    return int(value)


def _solve_gcd(m, env):
    return gcd(_int_of(m.group(1), env), _int_of(m.group(2), env))


def _solve_lcm(m, env):
    return lcm(_int_of(m.group(1), env), _int_of(m.group(2), env))


def _solve_remainder(m, env):
    return _int_of(m.group(1), env) % _int_of(m.group(2), env)


def _solve_is_factor_both(m, env):
    d = _int_of(m.group(1), env)
    return is_factor(d, _int_of(m.group(2), env)) and \
        is_factor(d, _int_of(m.group(3), env))


def _solve_is_factor(m, env):
    return is_factor(_int_of(m.group(1), env), _int_of(m.group(2), env))


def _solve_is_multiple(m, env):
    return is_factor(_int_of(m.group(2), env), _int_of(m.group(1), env))


def _solve_is_prime(m, env):
    n = _int_of(m.group(1), env)
    return n >= 2 and is_prime(n)

def _solve_is_composite(m, env):
    n = _int_of(m.group(1), env)
    return not (n >= 2 and is_prime(n))


def _solve_prime_factors(m, env):
    return prime_factor_list(_int_of(m.group(1), env))


def _solve_place_value(m, env):
    place = PLACE_BY_NAME[m.group(1)]
    text = m.group(2)
    try:
        x = ExactDecimal.from_string(text)
    except Exception:
        x = ExactDecimal(_int_of(text, env))
    return place_value(x, place)


def _solve_round_tens(m, env):
    text = m.group(1)
    try:
        x = ExactDecimal.from_string(text)
    except Exception:
        x = ExactDecimal(_int_of(text, env))
    return round_to_place(x, -_TENS_BY_WORD[m.group(2)])


def _solve_round_decimal(m, env):
    x = ExactDecimal.from_string(m.group(1))
    return round_to_place(x, WORD_TO_NUMBER[m.group(2)])


def _solve_base_conversion(m, env):
    value = BaseNumeral.parse(m.group(1), int(m.group(2))).to_int()
    return str(BaseNumeral.from_int(value, int(m.group(3))))


MATCHERS = [
    (1, re.compile(r"^(?:Calculate|What is) the (?:greatest common (?:divisor|factor)|highest common factor) of (.+) and (.+)[.?]$"),
     _solve_gcd),
    (1, re.compile(r"^(?:Calculate the lowest|What is the smallest|Find the least) common multiple of (.+) and (.+)[.?]$"),
     _solve_lcm),
    (1, re.compile(r"^(?:Calculate|What is) the remainder when (.+) is divided by (.+)[.?]$"),
     _solve_remainder),
    (0, re.compile(r"^Is (.+) a factor of both (.+) and (.+)\?$"),
     _solve_is_factor_both),
    (1, re.compile(r"^Is (.+) a factor of (.+)\?$"), _solve_is_factor),
    (1, re.compile(r"^Does (.+) divide (.+)\?$"), _solve_is_factor),
    (1, re.compile(r"^Is (.+) a multiple of (.+)\?$"), _solve_is_multiple),
    (1, re.compile(r"^Is (.+) (?:a prime number|prime)\?$"), _solve_is_prime),
    (1, re.compile(r"^Is (.+) composite\?$"), _solve_is_composite),
    (1, re.compile(r"^(?:What are|List|Give) the prime factors of (.+?)[.?]$"),
     _solve_prime_factors),
    (1, re.compile(r"^(?:What is|Give) the ([a-z ]+) digit of (.+?)[.?]$"),
     _solve_place_value),
    (1, re.compile(r"^(?:Round|What is) (.+?) (?:to|rounded to) the nearest ([a-z ]+)[.?]$"),
     _solve_round_tens),
    (1, re.compile(r"^(?:Give|Round|What is) (.+?) (?:to|rounded to) (\w+) decimal places?[.?]$"),
     _solve_round_decimal),
    (1, re.compile(r"^(?:Give|What is|Convert) (-?[0-9a-f]+) \(base (\d+)\) (?:in|to) base (\d+)[.?]$"),
     _solve_base_conversion),
]
