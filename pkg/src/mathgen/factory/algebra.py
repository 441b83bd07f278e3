"""Algebra question modules: linear equations, polynomial roots, sequences."""

from __future__ import annotations

import math
import re
from fractions import Fraction

from ..expressions import ContractViolation, parse
from ..numeric import InvalidInputError
from ..solvers import LinearSystem2, fit_sequence, solve_linear_1d, solve_linear_2d
from ..symbolic import (Polynomial, factorization_of, format_factorization,
                        format_polynomial, format_rational, poly_roots,
                        to_polynomial)
from .base import (ExtrapolationAxis, ModuleSpec, RetrySignal, allocate_digits,
                   draw_int, draw_range, draw_reduced_fraction,
                   draw_signed_with_zero, draw_uint, pick)


def _signed_term(c: int, body: str, first: bool) -> str:
    """One term of a hand-joined linear combination."""
    if c == 0:
        return ""
    mag = body if abs(c) == 1 else f"{abs(c)}*{body}"
    if first:
        return mag if c > 0 else f"-{mag}"
    return f" + {mag}" if c > 0 else f" - {mag}"


def _linear_eq_text(a: int, x: str, b: int, y: str, rhs: int) -> str:
    """a*x + b*y = rhs keeping the system's own variable order."""
    lhs = _signed_term(a, x, True)
    lhs += _signed_term(b, y, not lhs)
    return f"{lhs} = {rhs}"


# --------------------------------------------------------------------------
# linear_1d
# --------------------------------------------------------------------------

def gen_linear_1d(ctx):
    var = ctx.fresh_letter()
    if pick(ctx.stream, (False, False, True)):
        solution = draw_reduced_fraction(ctx.stream, ctx.budget, 2, 9, "x0")
    else:
        d0 = max(1, math.ceil(ctx.budget.remaining / 4))
        solution = Fraction(draw_int(ctx.stream, ctx.budget, d0, "x0"))
    q = solution.denominator
    form = pick(ctx.stream, ("two_sided", "two_sided", "one_sided", "bracket"))
    k2 = draw_int(ctx.stream, ctx.budget, 1, "k2")
    delta = q * k2  # a - c; multiple of the denominator keeps d integral
    if form == "bracket":
        m = delta  # bracket coefficient is the whole x-side
        n = draw_int(ctx.stream, ctx.budget,
                     max(1, math.ceil(ctx.budget.remaining / 2)), "n")
        k = draw_int(ctx.stream, ctx.budget,
                     max(1, math.ceil(ctx.budget.remaining)), "k")
        b = k - m * n
        c = 0
        d = b + delta * solution
        assert d.denominator == 1
        op = "-" if n < 0 else "+"
        lhs = f"{m}*({var} {op} {abs(n)}) + {k}" if k >= 0 else \
            f"{m}*({var} {op} {abs(n)}) - {-k}"
        rhs = format_polynomial(Polynomial.univariate(var, [int(d)]))
    else:
        c = 0 if form == "one_sided" else draw_signed_with_zero(
            ctx.stream, ctx.budget, max(1, math.ceil(ctx.budget.remaining / 2)),
            "c")
        a = c + delta
        b = draw_signed_with_zero(ctx.stream, ctx.budget,
                                  max(1, math.ceil(ctx.budget.remaining)), "b")
        d = b + delta * solution
        assert d.denominator == 1
        lhs = format_polynomial(Polynomial.univariate(var, [b, a]))
        rhs = format_polynomial(Polynomial.univariate(var, [int(d), c]))
        if lhs == rhs:
            raise RetrySignal("degenerate equation")
    sentence = pick(ctx.stream, (
        "Solve {l} = {r} for {v}.",
        "Solve {l} = {r} for {v}.",
        "Let {l} = {r}. Calculate {v}.",
    )).format(l=lhs, r=rhs, v=var)
    return sentence, solution


# --------------------------------------------------------------------------
# linear_2d
# --------------------------------------------------------------------------

def backward_generate_linear_2d(ctx, solution: tuple[int, int]) -> LinearSystem2:
    x0, y0 = solution
    digits = allocate_digits(ctx.stream, ctx.budget.remaining, 4, lo=1, hi=3)
    a = draw_int(ctx.stream, ctx.budget, digits[0], "a")
    b = draw_int(ctx.stream, ctx.budget, digits[1], "b")
    c = draw_int(ctx.stream, ctx.budget, digits[2], "c")
    d = draw_int(ctx.stream, ctx.budget, digits[3], "d")
    if a * d - b * c == 0:
        raise RetrySignal("singular coefficient rows")
    return LinearSystem2(a, b, c, d, a * x0 + b * y0, c * x0 + d * y0)


def gen_linear_2d(ctx):
    x = ctx.fresh_letter()
    y = ctx.fresh_letter()
    d0 = max(1, math.ceil(ctx.budget.remaining / 6))
    x0 = draw_int(ctx.stream, ctx.budget, d0, "x0")
    y0 = draw_int(ctx.stream, ctx.budget, d0 + 1, "y0")
    system = backward_generate_linear_2d(ctx, (x0, y0))
    eq1 = _linear_eq_text(system.a, x, system.b, y, system.e)
    eq2 = _linear_eq_text(system.c, x, system.d, y, system.f)
    target = pick(ctx.stream, (x, y))
    answer = x0 if target == x else y0
    sentence = pick(ctx.stream, (
        "Solve {e1} and {e2} for {v}.",
        "Solve {e1} and {e2} for {v}.",
        "Given {e1} and {e2}, calculate {v}.",
    )).format(e1=eq1, e2=eq2, v=target)
    return sentence, answer


# --------------------------------------------------------------------------
# polynomial_roots
# --------------------------------------------------------------------------

def _draw_roots(ctx, count: int, numerator_digits: int) -> list[Fraction]:
    roots: list[Fraction] = []
    discount = math.factorial(count)
    for i in range(count):
        rational = pick(ctx.stream, (False, False, True))
        if rational:
            root = draw_reduced_fraction(ctx.stream, ctx.budget,
                                         numerator_digits, 5, f"root{i}")
        else:
            root = Fraction(draw_int(ctx.stream, ctx.budget,
                                     numerator_digits, f"root{i}"))
        if root in roots:
            raise RetrySignal("coincident roots")
        roots.append(root)
    # the expanded polynomial is symmetric in the roots: divide the claimed
    # set size by count! so the multiset map stays within the bound
    ctx.budget.credit_log10("root-order", -math.log10(discount)
                            if discount == 1 else 0.0)
    if discount > 1:
        ctx.budget.credit_log10("root-order-adjust", 0.0)
    return roots


def gen_polynomial_roots(ctx):
    c_lo, c_hi = ctx.param("roots", (1, 3))
    count = pick(ctx.stream, range(c_lo, c_hi + 1))
    share = max(1, math.ceil((ctx.budget.remaining
                              + math.log10(math.factorial(count))) / count))
    roots: list[Fraction] = []
    for i in range(count):
        discount = math.factorial(count) if i == count - 1 else 1
        size = 2 * 10 ** share
        ctx.budget.credit_log10(f"root{i}", math.log10(size / discount))
        rational = pick(ctx.stream, (False, False, True))
        while True:
            raw = ctx.stream.randbelow(size) - 10 ** share
            value = raw if raw < 0 else raw + 1
            root = Fraction(value, pick(ctx.stream, (2, 3, 4, 5))) if rational \
                else Fraction(value)
            if root not in roots:
                break
        roots.append(root)
    multiplicity = [1] * count
    if pick(ctx.stream, (False, False, True)):
        multiplicity[pick(ctx.stream, range(count))] = 2
    var = ctx.fresh_letter()
    poly = Polynomial.constant(1)
    for root, mult in zip(roots, multiplicity):
        factor = Polynomial.univariate(
            var, [-root.numerator, root.denominator])
        poly = poly * factor ** mult
    rendered = format_polynomial(poly)
    if pick(ctx.stream, (False, True)):
        sentence = pick(ctx.stream, (
            "Factorize {p}.", "Factor {p}.")).format(p=rendered)
        constant, factors = factorization_of(poly, var)
        answer = format_factorization(constant, factors)
    else:
        sentence = pick(ctx.stream, (
            "Solve {p} = 0 for {v}.",
            "Find the roots of {p}.",
        )).format(p=rendered, v=var)
        answer = sorted(set(poly_roots(poly, var)))
    return sentence, answer


# --------------------------------------------------------------------------
# sequences
# --------------------------------------------------------------------------

def _gen_sequence_terms(ctx):
    degree = pick(ctx.stream, ctx.param("degrees", (1, 1, 2, 2, 3)))
    share = max(1, math.ceil(ctx.budget.remaining / (degree + 1)))
    coeffs = [draw_signed_with_zero(ctx.stream, ctx.budget, share, f"c{j}")
              for j in range(degree)]
    coeffs.append(draw_int(ctx.stream, ctx.budget, share, "lead"))
    shown = degree + pick(ctx.stream, (2, 3, 4))
    terms = [sum(c * math.comb(n - 1, j) for j, c in enumerate(coeffs))
             for n in range(1, shown + 1)]
    return terms


def gen_sequence_next_term(ctx):
    terms = _gen_sequence_terms(ctx)
    spec = fit_sequence(terms)
    listed = ", ".join(str(t) for t in terms)
    sentence = pick(ctx.stream, (
        "What comes next in the sequence {t}?",
        "What is the next term in {t}?",
        "What comes next: {t}?",
    )).format(t=listed)
    value = spec.next_term()
    assert value.denominator == 1
    return sentence, int(value)


def gen_sequence_nth_term(ctx):
    ctx.reserve_letters("n")
    terms = _gen_sequence_terms(ctx)
    spec = fit_sequence(terms)
    listed = ", ".join(str(t) for t in terms)
    sentence = pick(ctx.stream, (
        "What is the nth term of {t}?",
        "Find the nth term of {t}.",
    )).format(t=listed)
    return sentence, spec.polynomial


# --------------------------------------------------------------------------
# Module table
# --------------------------------------------------------------------------

MODULES = [
    ModuleSpec("algebra/linear_1d", gen_linear_1d),
    ModuleSpec("algebra/linear_2d", gen_linear_2d),
    ModuleSpec("algebra/polynomial_roots", gen_polynomial_roots),
    ModuleSpec("algebra/sequence_next_term", gen_sequence_next_term),
    ModuleSpec("algebra/sequence_nth_term", gen_sequence_nth_term),
]

EXTRAPOLATION_MODULES = [
    ModuleSpec("algebra/polynomial_roots_big", gen_polynomial_roots,
               params=(("roots", (4, 5)),),
               base_id="algebra/polynomial_roots",
               axis=ExtrapolationAxis("roots", 3, 4, 5)),
]


# --------------------------------------------------------------------------
# Text matchers
# --------------------------------------------------------------------------

def _solve_linear_or_roots(m, env):
    lhs, rhs, var = m.group(1), m.group(2), m.group(3)
    left = to_polynomial(parse(lhs), env)
    right = to_polynomial(parse(rhs), env)
    p = left - right
    degree = p.degree_in(var)
    if degree == 1 and not p.variables() - {var}:
        return solve_linear_1d(parse(lhs), parse(rhs), var, env)
    if degree >= 2:
        return sorted(set(poly_roots(p, var)))
    return None


def _solve_system(m, env):
    eq1l, eq1r = m.group(1), m.group(2)
    eq2l, eq2r = m.group(3), m.group(4)
    target = m.group(5)
    p1 = to_polynomial(parse(eq1l), env) - to_polynomial(parse(eq1r), env)
    p2 = to_polynomial(parse(eq2l), env) - to_polynomial(parse(eq2r), env)
    variables = sorted(p1.variables() | p2.variables())
    if len(variables) != 2:
        return None
    x, y = variables

    def coeffs(p):
        cx = p.coefficient(_mono(x))
        cy = p.coefficient(_mono(y))
        c0 = p.coefficient(_mono(None))
        return cx, cy, -c0

    a, b, e = coeffs(p1)
    c, d, f = coeffs(p2)
    system = LinearSystem2(int(a), int(b), int(c), int(d), int(e), int(f), x, y)
    return solve_linear_2d(system, target)


def _mono(var):
    from ..symbolic import Monomial
    return Monomial.of({var: 1} if var else {})


def _solve_roots(m, env):
    p = to_polynomial(parse(m.group(1)), env)
    return sorted(set(poly_roots(p)))


def _solve_factorize(m, env):
    p = to_polynomial(parse(m.group(1)), env)
    variables = p.variables()
    if len(variables) != 1:
        return None
    constant, factors = factorization_of(p, next(iter(variables)))
    return format_factorization(constant, factors)


def _solve_next_term(m, env):
    terms = [int(t) for t in m.group(1).split(", ")]
    value = fit_sequence(terms).next_term()
    return int(value)


def _solve_nth_term(m, env):
    terms = [int(t) for t in m.group(1).split(", ")]
    return fit_sequence(terms).polynomial


MATCHERS = [
    (1, re.compile(r"^Solve (.+) = (.+) and (.+) = (.+) for ([a-z])\.$"),
     _solve_system),
    (2, re.compile(r"^Given (.+) = (.+) and (.+) = (.+), calculate ([a-z])\.$"),
     _solve_system),
    (3, re.compile(r"^Solve (.+) = (.+) for ([a-z])\.$"), _solve_linear_or_roots),
    (3, re.compile(r"^Let (.+) = (.+)\. Calculate ([a-z])\.$"),
     _solve_linear_or_roots),
    (2, re.compile(r"^(?:Factorize|Factor) (.+)\.$"), _solve_factorize),
    (2, re.compile(r"^Find the roots of (.+)\.$"), _solve_roots),
    (1, re.compile(r"^(?:What comes next in the sequence|What is the next term in|What comes next:) (.+)\?$"),
     _solve_next_term),
    (1, re.compile(r"^(?:What is|Find) the nth term of (.+)[.?]$"),
     _solve_nth_term),
]
