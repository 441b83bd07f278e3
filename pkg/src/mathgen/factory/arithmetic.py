"""Arithmetic question modules.

Everything is answer-first: the result is drawn under the entropy budget
and the printed expression is built backwards around it, so expressions
never collapse to trivial values and the answer distribution is controlled.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .. import expressions as ex
from ..expressions import evaluate, format_expression, parse
from ..numeric import BaseNumeral, ExactDecimal, base_convert, nearest_integer_root
from ..symbolic import Surd, format_surd, simplify_surd
from .base import (ExtrapolationAxis, ModuleSpec, RetrySignal, allocate_digits,
                   draw_decimal, draw_int, draw_range, draw_reduced_fraction,
                   draw_squarefree, draw_uint, ordinal_word, pick)
from .backward import backward_generate_arithmetic

_CALC_TEMPLATES = ("Calculate {e}.", "What is {e}?", "Work out {e}.",
                   "Evaluate {e}.")


def _calc_sentence(ctx, body: str) -> str:
    return pick(ctx.stream, _CALC_TEMPLATES).format(e=body)


def _operand_strings(a, op: str, b) -> str:
    return f"{a} {op} {b}"


# --------------------------------------------------------------------------
# add_or_sub
# --------------------------------------------------------------------------

def gen_add_or_sub(ctx):
    lo, hi = ctx.param("digits", (1, 10))
    composed = ctx.take_composed()
    op = pick(ctx.stream, "+-")
    decimal_mode = composed is None and pick(ctx.stream, (False, True))
    if decimal_mode:
        d_ans, d_b = allocate_digits(ctx.stream, ctx.budget.remaining, 2, lo, hi)
        scales = pick(ctx.stream, ((1, 0), (2, 0), (3, 0), (4, 0), (2, 1),
                                   (3, 2), (4, 2), (0, 3)))
        answer = draw_decimal(ctx.stream, ctx.budget, d_ans, scales[0], "ans")
        b = draw_decimal(ctx.stream, ctx.budget, d_b, scales[1], "operand")
        a = answer - b if op == "+" else answer + b
        left, right = str(a), str(b)
    else:
        d_ans, d_b = allocate_digits(ctx.stream, ctx.budget.remaining, 2, lo, hi)
        answer = draw_int(ctx.stream, ctx.budget, d_ans, "ans")
        if composed is not None:
            right, b = composed
            a = answer - b if op == "+" else answer + b
            left = str(a)
        else:
            b = draw_int(ctx.stream, ctx.budget, d_b, "operand")
            a = answer - b if op == "+" else answer + b
            left, right = str(a), str(b)
    template = pick(ctx.stream, range(5))
    if template == 4 and composed is None and not decimal_mode:
        if op == "+":
            sentence = f"Add together {left} and {right}."
        else:
            sentence = f"Subtract {right} from {left}."
    else:
        sentence = _calc_sentence(ctx, _operand_strings(left, op, right))
    return sentence, answer


# --------------------------------------------------------------------------
# add_sub_multiple
# --------------------------------------------------------------------------

def gen_add_sub_multiple(ctx):
    t_lo, t_hi = ctx.param("terms", (3, 10))
    terms = pick(ctx.stream, range(t_lo, t_hi + 1))
    composed = ctx.take_composed()
    digits = allocate_digits(ctx.stream, ctx.budget.remaining, terms,
                             lo=1, hi=4)
    answer = draw_int(ctx.stream, ctx.budget, digits[0], "ans")
    surfaces: list[str] = []
    ops: list[str] = []
    running = 0
    for i in range(1, terms):
        op = pick(ctx.stream, "+-")
        if composed is not None and i == 1:
            surface, value = composed
        else:
            value = draw_int(ctx.stream, ctx.budget, digits[i], f"term{i}")
            surface = str(value)
        ops.append(op)
        surfaces.append(surface)
        running += value if op == "+" else -value
    first = answer - running
    chain = str(first)
    for op, surface in zip(ops, surfaces):
        chain += f" {op} {surface}"
    return _calc_sentence(ctx, chain), answer


# --------------------------------------------------------------------------
# mul
# --------------------------------------------------------------------------

def gen_mul(ctx):
    lo, hi = ctx.param("digits", (1, 5))
    d_a, d_b = allocate_digits(ctx.stream, ctx.budget.remaining, 2, lo, hi)
    decimal_mode = pick(ctx.stream, (False, True))
    if decimal_mode:
        a = draw_decimal(ctx.stream, ctx.budget, d_a,
                         pick(ctx.stream, (1, 2, 3)), "a")
        b = draw_decimal(ctx.stream, ctx.budget, d_b,
                         pick(ctx.stream, (0, 1, 2)), "b")
        answer = a * b
    else:
        a = draw_int(ctx.stream, ctx.budget, d_a, "a")
        b = draw_int(ctx.stream, ctx.budget, d_b, "b")
        answer = a * b
    if pick(ctx.stream, (False, False, False, True)):
        sentence = f"Multiply {a} and {b}."
    else:
        sentence = _calc_sentence(ctx, f"{a} * {b}")
    return sentence, answer


# --------------------------------------------------------------------------
# div
# --------------------------------------------------------------------------

def gen_div(ctx):
    lo, hi = ctx.param("digits", (1, 5))
    d_p, d_k = allocate_digits(ctx.stream, ctx.budget.remaining, 2, lo, hi)
    if pick(ctx.stream, (False, True)):
        answer = Fraction(draw_int(ctx.stream, ctx.budget, d_p, "p"))
    else:
        answer = draw_reduced_fraction(ctx.stream, ctx.budget, d_p,
                                       10 ** max(1, d_p // 2), "pq")
    k = draw_uint(ctx.stream, ctx.budget, d_k, "k")
    dividend = answer.numerator * k
    divisor = answer.denominator * k
    sentence = pick(ctx.stream, (
        "Divide {a} by {b}.", "Calculate {a} divided by {b}.",
        "What is {a} divided by {b}?")).format(a=dividend, b=divisor)
    return sentence, answer


# --------------------------------------------------------------------------
# mixed and mul_div_multiple
# --------------------------------------------------------------------------

def _gen_expression_module(ctx, allowed: str):
    o_lo, o_hi = ctx.param("ops", (2, 4))
    op_count = pick(ctx.stream, range(o_lo, o_hi + 1))
    share = ctx.budget.remaining
    d_ans = max(1, math.ceil(share / (op_count + 1)))
    fraction_answer = pick(ctx.stream, (False, False, False, True))
    if fraction_answer:
        answer = draw_reduced_fraction(ctx.stream, ctx.budget,
                                       max(1, d_ans - 1), 12, "ans")
    else:
        answer = Fraction(draw_int(ctx.stream, ctx.budget, d_ans, "ans"))
    expr = backward_generate_arithmetic(
        ctx.stream, ctx.budget, answer, op_count, allowed=allowed,
        digits=max(1, math.ceil(ctx.budget.remaining / max(1, op_count))))
    rendered = format_expression(expr)
    if evaluate(expr) != answer:
        raise RetrySignal("backward expression does not re-evaluate")
    entity = int(answer) if answer.denominator == 1 else answer
    return _calc_sentence(ctx, rendered), entity


def gen_mixed(ctx):
    return _gen_expression_module(ctx, "+-*/")


def gen_mul_div_multiple(ctx):
    return _gen_expression_module(ctx, "*/")


# --------------------------------------------------------------------------
# add_or_sub_in_base
# --------------------------------------------------------------------------

def gen_add_or_sub_in_base(ctx):
    lo, hi = ctx.param("digits", (1, 8))
    base = draw_range(ctx.stream, ctx.budget, 2, 16, "base")
    d_x, d_y = allocate_digits(ctx.stream, ctx.budget.remaining, 2, lo, hi)
    x = draw_int(ctx.stream, ctx.budget, d_x, "x")
    y = draw_int(ctx.stream, ctx.budget, d_y, "y")
    op = pick(ctx.stream, "+-")
    value = x + y if op == "+" else x - y
    xs = BaseNumeral.from_int(x, base)
    ys = BaseNumeral.from_int(y, base)
    answer = BaseNumeral.from_int(value, base)
    sentence = pick(ctx.stream, (
        "In base {b}, what is {x} {op} {y}?",
        "In base {b}, calculate {x} {op} {y}.")).format(
            b=base, x=xs, op=op, y=ys)
    return sentence, str(answer)


# --------------------------------------------------------------------------
# nearest_integer_root
# --------------------------------------------------------------------------

def _root_interval(m: int, k: int) -> tuple[int, int]:
    # integers whose nearest k-th root is m: ((m-1/2)^k, (m+1/2)^k]
    lo = (2 * m - 1) ** k // 2 ** k + 1
    hi = (2 * m + 1) ** k // 2 ** k
    return lo, hi


def _root_phrase(k: int) -> str:
    if k == 2:
        return "square root"
    if k == 3:
        return "cube root"
    return f"{ordinal_word(k)} root"


def gen_nearest_integer_root(ctx):
    k = pick(ctx.stream, (2, 2, 3, 3, 4))
    need = ctx.budget.remaining
    for dm in range(1, 20):
        m_lo = 10 ** (dm - 1)
        lo, hi = _root_interval(m_lo, k)
        worst = math.log10(9 * 10 ** (dm - 1) + 1) + math.log10(hi - lo + 1)
        if worst >= need:
            break
    m = draw_range(ctx.stream, ctx.budget, 10 ** (dm - 1), 10 ** dm, "m")
    lo, hi = _root_interval(m, k)
    n = draw_range(ctx.stream, ctx.budget, lo, hi, "n")
    if nearest_integer_root(n, k) != m:
        raise RetrySignal("root interval mismatch")
    sentence = pick(ctx.stream, (
        "What is the {r} of {n} to the nearest integer?",
        "Calculate the {r} of {n} to the nearest integer.")).format(
            r=_root_phrase(k), n=n)
    return sentence, m


# --------------------------------------------------------------------------
# simplify_surd
# --------------------------------------------------------------------------

def _surd_limit(ctx) -> int:
    return ctx.param("surd_limit", 60)


def _coeff_sqrt(c: int, radicand: int):
    body = ex.sqrt(ex.num(radicand))
    if c == 1:
        return body
    if c == -1:
        return ex.Neg(body)
    return ex.mul(ex.num(c), body)


def gen_simplify_surd(ctx):
    family = pick(ctx.stream, ("single", "single", "quotient", "sum"))
    limit = _surd_limit(ctx)
    d = draw_squarefree(ctx.stream, ctx.budget, limit, "radicand")
    if family == "single":
        k = draw_uint(ctx.stream, ctx.budget, 1, "k")
        c0 = draw_int(ctx.stream, ctx.budget, 2, "c0")
        body = ex.sqrt(ex.num(d * k * k))
        expr = body if abs(c0) == 1 else ex.mul(ex.num(c0), body)
        if c0 == -1:
            expr = ex.Neg(body)
    elif family == "quotient":
        b = draw_uint(ctx.stream, ctx.budget, 1, "b") + 1
        k = draw_uint(ctx.stream, ctx.budget, 1, "k")
        c1 = draw_int(ctx.stream, ctx.budget, 2, "c1")
        c2 = draw_uint(ctx.stream, ctx.budget, 2, "c2")
        a = d * b * k * k
        numerator = ex.mul(ex.sqrt(ex.num(a)), ex.num(c1))
        denominator = ex.mul(ex.sqrt(ex.num(b)), ex.num(c2))
        expr = ex.div(numerator, denominator)
        if pick(ctx.stream, (False, True)):
            c3 = draw_int(ctx.stream, ctx.budget, 1, "c3")
            expr = ex.mul(expr, ex.num(c3))
    else:
        k1 = draw_uint(ctx.stream, ctx.budget, 1, "k1")
        k2 = draw_uint(ctx.stream, ctx.budget, 1, "k2")
        c1 = draw_int(ctx.stream, ctx.budget, 2, "c1")
        c2 = draw_int(ctx.stream, ctx.budget, 2, "c2")
        if c1 * k1 + c2 * k2 == 0:
            raise RetrySignal("surd sum cancelled")
        op = "+" if c2 > 0 else "-"
        lhs = _coeff_sqrt(c1, d * k1 * k1)
        rhs = _coeff_sqrt(abs(c2), d * k2 * k2)
        expr = ex.BinOp(op, lhs, rhs)
    answer = simplify_surd(expr)
    if answer.is_rational:
        raise RetrySignal("surd collapsed to a rational")
    sentence = pick(ctx.stream, (
        "Simplify {e}.", "Simplify {e} completely.")).format(
            e=format_expression(expr))
    return sentence, answer


# --------------------------------------------------------------------------
# Module table
# --------------------------------------------------------------------------

MODULES = [
    ModuleSpec("arithmetic/add_or_sub", gen_add_or_sub, composable="integer"),
    ModuleSpec("arithmetic/add_sub_multiple", gen_add_sub_multiple,
               composable="integer"),
    ModuleSpec("arithmetic/mul", gen_mul),
    ModuleSpec("arithmetic/div", gen_div),
    ModuleSpec("arithmetic/mixed", gen_mixed),
    ModuleSpec("arithmetic/mul_div_multiple", gen_mul_div_multiple),
    ModuleSpec("arithmetic/add_or_sub_in_base", gen_add_or_sub_in_base),
    ModuleSpec("arithmetic/nearest_integer_root", gen_nearest_integer_root),
    ModuleSpec("arithmetic/simplify_surd", gen_simplify_surd),
]

EXTRAPOLATION_MODULES = [
    ModuleSpec("arithmetic/add_or_sub_big", gen_add_or_sub,
               params=(("digits", (11, 20)),),
               base_id="arithmetic/add_or_sub",
               axis=ExtrapolationAxis("operand digits", 10, 11, 20)),
    ModuleSpec("arithmetic/add_sub_multiple_longer", gen_add_sub_multiple,
               params=(("terms", (11, 20)),),
               base_id="arithmetic/add_sub_multiple",
               axis=ExtrapolationAxis("terms", 10, 11, 20)),
    ModuleSpec("arithmetic/div_big", gen_div,
               params=(("digits", (6, 10)),),
               base_id="arithmetic/div",
               axis=ExtrapolationAxis("operand digits", 5, 6, 10)),
    ModuleSpec("arithmetic/mixed_longer", gen_mixed,
               params=(("ops", (5, 8)),),
               base_id="arithmetic/mixed",
               axis=ExtrapolationAxis("operators", 4, 5, 8)),
    ModuleSpec("arithmetic/mul_big", gen_mul,
               params=(("digits", (6, 10)),),
               base_id="arithmetic/mul",
               axis=ExtrapolationAxis("operand digits", 5, 6, 10)),
    ModuleSpec("arithmetic/mul_div_multiple_longer", gen_mul_div_multiple,
               params=(("ops", (5, 8)),),
               base_id="arithmetic/mul_div_multiple",
               axis=ExtrapolationAxis("operators", 4, 5, 8)),
]


# --------------------------------------------------------------------------
# Text matchers (verification route)
# --------------------------------------------------------------------------

def _solve_add_together(m, env):
    return evaluate(parse(m.group(1)), env) + evaluate(parse(m.group(2)), env)


def _solve_subtract(m, env):
    return evaluate(parse(m.group(2)), env) - evaluate(parse(m.group(1)), env)


def _solve_multiply(m, env):
    a = parse(m.group(1))
    b = parse(m.group(2))
    if isinstance(a, ex.Dec) or isinstance(b, ex.Dec):
        da = a.value if isinstance(a, ex.Dec) else ExactDecimal(int(evaluate(a)))
        db = b.value if isinstance(b, ex.Dec) else ExactDecimal(int(evaluate(b)))
        return da * db
    return evaluate(a, env) * evaluate(b, env)


def _solve_divide(m, env):
    a = evaluate(parse(m.group(1)), env)
    b = evaluate(parse(m.group(2)), env)
    return a / b


def _solve_base(m, env):
    base = int(m.group(1))
    x = BaseNumeral.parse(m.group(2), base).to_int()
    y = BaseNumeral.parse(m.group(4), base).to_int()
    value = x + y if m.group(3) == "+" else x - y
    return str(BaseNumeral.from_int(value, base))


_ROOT_ORDER = {"square root": 2, "cube root": 3}


def _solve_root(m, env):
    phrase = m.group(1)
    k = _ROOT_ORDER.get(phrase)
    if k is None:
        from .base import ORDINAL_TO_NUMBER
        k = ORDINAL_TO_NUMBER[phrase.split()[0]]
    return nearest_integer_root(int(m.group(2)), k)


def _solve_simplify_surd(m, env):
    if "sqrt" not in m.group(1):
        return None
    return simplify_surd(parse(m.group(1)))


MATCHERS = [
    (2, re.compile(r"^Add together (.+) and (.+)\.$"), _solve_add_together),
    (2, re.compile(r"^Subtract (.+) from (.+)\.$"), _solve_subtract),
    (2, re.compile(r"^Multiply (.+) and (.+)\.$"), _solve_multiply),
    (2, re.compile(r"^(?:Divide (.+) by (.+)|Calculate (.+) divided by (.+)|What is (.+) divided by (.+))[.?]$"),
     None),  # handler attached below: alternation needs group juggling
    (1, re.compile(r"^In base (\d+), (?:what is|calculate) (-?[0-9a-f]+) ([+-]) (-?[0-9a-f]+)[.?]$"),
     _solve_base),
    (1, re.compile(r"^(?:What is|Calculate) the (square root|cube root|\w+ root) of (\d+) to the nearest integer[.?]$"),
     _solve_root),
    (3, re.compile(r"^Simplify (.+?)(?: completely)?\.$"), _solve_simplify_surd),
]


def _solve_divide_multi(m, env):
    groups = [g for g in m.groups() if g is not None]
    return _solve_divide_pair(groups[0], groups[1], env)


def _solve_divide_pair(a_text, b_text, env):
    a = evaluate(parse(a_text), env)
    b = evaluate(parse(b_text), env)
    return a / b


MATCHERS[3] = (2, MATCHERS[3][1], _solve_divide_multi)
