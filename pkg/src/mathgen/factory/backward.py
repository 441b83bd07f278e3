"""Backward construction of arithmetic expressions.

Sampling a random expression tree forward tends to evaluate to zero or to
something enormous, so the answer is sampled first and the tree is grown
around it: at each node one operand is drawn (and credited) and the other
is computed so the node still evaluates to the required value. Leaves are
always integers, and every credited draw maps injectively to the rendered
expression (fractions are drawn already reduced).
"""

from __future__ import annotations

from fractions import Fraction

from .. import expressions as ex
from ..expressions import Expression
from ..sampling import EntropyBudget, RandomStream
from .base import RetrySignal, draw_int, draw_reduced_fraction, pick


def _feasible_ops(value: Fraction, ops_left: int, allowed: str) -> list[str]:
    if ops_left == 1:
        if value.denominator != 1:
            out = [op for op in allowed if op == "/"]
        else:
            out = [op for op in allowed if op != "*"]
    else:
        out = list(allowed)
    if not out:
        raise RetrySignal("no feasible operator for backward construction")
    return out


def backward_generate_arithmetic(stream: RandomStream, budget: EntropyBudget,
                                 value: Fraction | int, op_count: int,
                                 allowed: str = "+-*/",
                                 digits: int = 2) -> Expression:
    """An expression with op_count operators evaluating exactly to value."""
    if op_count < 1:
        raise ValueError("need at least one operator")
    return _build(stream, budget, Fraction(value), op_count, allowed, digits)


def _literal(value: Fraction) -> Expression:
    if value.denominator != 1:
        raise RetrySignal("non-integer leaf in backward construction")
    return ex.num(int(value))


def _sampled_value(stream, budget, ops: int, digits: int,
                   fraction_ok: bool) -> Fraction:
    """A value realizable by a subtree with `ops` operators."""
    if ops >= 1 and fraction_ok and pick(stream, (False, False, True)):
        return draw_reduced_fraction(stream, budget, digits, 11, "bw-frac")
    return Fraction(draw_int(stream, budget, digits, "bw-int"))


def _nonzero_sample(stream, budget, ops, digits, fraction_ok) -> Fraction:
    value = _sampled_value(stream, budget, ops, digits, fraction_ok)
    while value == 0:  # draw_int never returns 0, only reachable defensively
        value = Fraction(draw_int(stream, budget, digits, "bw-int"))
    return value


def _build(stream: RandomStream, budget: EntropyBudget, value: Fraction,
           ops_left: int, allowed: str, digits: int) -> Expression:
    if ops_left == 0:
        return _literal(value)
    op = pick(stream, _feasible_ops(value, ops_left, allowed))
    right_ops = pick(stream, range(ops_left))
    left_ops = ops_left - 1 - right_ops

    if op in "+-":
        if left_ops == 0 and value.denominator != 1:
            # the left leaf must be an integer; sample it directly
            left_value = Fraction(draw_int(stream, budget, digits, "bw-left"))
            right_value = value - left_value if op == "+" else left_value - value
        else:
            right_value = _sampled_value(stream, budget, right_ops, digits,
                                         fraction_ok=left_ops >= 1)
            left_value = value - right_value if op == "+" else value + right_value
    elif op == "*":
        # keep at least one operator on the computed (left) side
        right_ops = pick(stream, range(ops_left - 1)) if ops_left > 1 else 0
        left_ops = ops_left - 1 - right_ops
        right_value = _nonzero_sample(stream, budget, right_ops, digits,
                                      fraction_ok=True)
        left_value = value / right_value
    else:  # division
        if left_ops == 0:
            # force divisibility: divisor is a multiple of the denominator
            k = draw_int(stream, budget, digits, "bw-k")
            right_value = Fraction(k * value.denominator)
            left_value = value * right_value
        else:
            right_value = _nonzero_sample(stream, budget, right_ops, digits,
                                          fraction_ok=True)
            left_value = value * right_value

    left = _build(stream, budget, left_value, left_ops, allowed, digits)
    right = _build(stream, budget, right_value, right_ops, allowed, digits)
    return ex.BinOp(op, left, right)
