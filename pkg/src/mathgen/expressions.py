"""Expression trees, their canonical text form, and the matching parser.

Rendering grammar shared by questions and answers: ``**`` for powers (no
surrounding spaces), exactly one space around binary ``+``/``-``, ``/`` with
no spaces, and ``*`` spaced only between purely numeric operands ("17 * 4"
but "9*g"). Parentheses appear only where precedence demands them.
``parse(format(e))`` evaluates to the same value as ``e``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .numeric import ExactDecimal, InvalidInputError


class ExprParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ContractViolation(RuntimeError):
    """A generator invariant did not hold (e.g. irrational root met)."""


@dataclass(frozen=True)
class Num:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Dec:
    value: ExactDecimal


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expression"


@dataclass(frozen=True)
class Neg:
    arg: "Expression"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / **
    left: "Expression"
    right: "Expression"


Expression = Union[Num, Dec, Var, Call, Neg, BinOp]

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "**": 4}
_UNARY_PRECEDENCE = 3  # tighter than * and /, looser than **


def add(l, r):
    return BinOp("+", l, r)


def sub(l, r):
    return BinOp("-", l, r)


def mul(l, r):
    return BinOp("*", l, r)


def div(l, r):
    return BinOp("/", l, r)


def pow_(l, r):
    return BinOp("**", l, r)


def sqrt(e):
    return Call("sqrt", e)


def num(x) -> Expression:
    if isinstance(x, ExactDecimal):
        return Num(x.to_fraction()) if x.is_integer else Dec(x)
    return Num(Fraction(x))


def has_symbol(e: Expression) -> bool:
    """True when the tree mentions a variable or function application."""
    if isinstance(e, (Var, Call)):
        return True
    if isinstance(e, Neg):
        return has_symbol(e.arg)
    if isinstance(e, BinOp):
        return has_symbol(e.left) or has_symbol(e.right)
    return False


def _is_negative_literal(e: Expression) -> bool:
    # fractions excluded: "x/-1/2" would regroup as (x/-1)/2
    if isinstance(e, Num):
        return e.value < 0 and e.value.denominator == 1
    if isinstance(e, Dec):
        return e.value.unscaled < 0
    return False


# --------------------------------------------------------------------------
# Formatting
# --------------------------------------------------------------------------

def format_expression(e: Expression) -> str:
    return _render(e, 0, symbolic=has_symbol(e))


def _render(e: Expression, context: int, symbolic: bool) -> str:
    if isinstance(e, Num):
        v = e.value
        if v.denominator == 1:
            text = str(v.numerator)
            prec = _UNARY_PRECEDENCE if v < 0 else 5
        else:
            text = f"{v.numerator}/{v.denominator}"
            prec = _PRECEDENCE["/"]
        return text if prec >= context else f"({text})"
    if isinstance(e, Dec):
        text = str(e.value)
        prec = _UNARY_PRECEDENCE if e.value.unscaled < 0 else 5
        return text if prec >= context else f"({text})"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Call):
        return f"{e.func}({_render(e.arg, 0, symbolic)})"
    if isinstance(e, Neg):
        inner = _render(e.arg, _UNARY_PRECEDENCE, symbolic)
        text = f"-{inner}"
        return text if _UNARY_PRECEDENCE >= context else f"({text})"
    if isinstance(e, BinOp):
        prec = _PRECEDENCE[e.op]
        if e.op == "**":
            left = _render(e.left, prec + 1, symbolic)
            right = _render_exponent(e.right, symbolic)
            text = f"{left}**{right}"
        else:
            left = _render(e.left, prec, symbolic)
            # bare negative literals are allowed on the right of + - * /
            if _is_negative_literal(e.right) and isinstance(e.right, (Num, Dec)):
                right = _render(e.right, 0, symbolic)
            else:
                right = _render(e.right, prec + 1, symbolic)
            if e.op in "+-":
                text = f"{left} {e.op} {right}"
            elif e.op == "*":
                glue = "*" if symbolic else " * "
                text = f"{left}{glue}{right}"
            else:
                text = f"{left}/{right}"
        return text if prec >= context else f"({text})"
    raise TypeError(f"not an expression: {e!r}")


def _render_exponent(e: Expression, symbolic: bool) -> str:
    # negative or fractional exponents keep parentheses: x**(-2), x**(1/2)
    if isinstance(e, Num) and (e.value < 0 or e.value.denominator != 1):
        v = e.value
        body = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return f"({body})"
    return _render(e, _PRECEDENCE["**"], symbolic)


# --------------------------------------------------------------------------
# Parsing
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+\.\d+|\d+)|(?P<name>[a-z]+)|(?P<op>\*\*|[-+*/(),]))")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None or m.end() == pos:
                stripped = text[pos:].lstrip()
                at = len(text) - len(stripped)
                if not stripped:
                    break
                raise ExprParseError(f"unexpected character {stripped[0]!r}", at)
            kind = m.lastgroup
            self.items.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.index = 0

    def peek(self) -> Optional[tuple[str, str, int]]:
        return self.items[self.index] if self.index < len(self.items) else None

    def next(self) -> Optional[tuple[str, str, int]]:
        item = self.peek()
        if item is not None:
            self.index += 1
        return item

    def expect_op(self, op: str) -> None:
        item = self.next()
        if item is None or item[0] != "op" or item[1] != op:
            raise ExprParseError(f"expected {op!r}", self.position(item))

    def position(self, item) -> int:
        return len(self.text) if item is None else item[2]


def parse(text: str) -> Expression:
    """Parse the rendering grammar back into an expression tree."""
    tokens = _Tokens(text)
    expr = _parse_sum(tokens)
    trailing = tokens.peek()
    if trailing is not None:
        raise ExprParseError(f"unexpected {trailing[1]!r}", trailing[2])
    return expr


def _parse_sum(tokens: _Tokens) -> Expression:
    expr = _parse_term(tokens)
    while True:
        item = tokens.peek()
        if item and item[0] == "op" and item[1] in "+-":
            tokens.next()
            expr = BinOp(item[1], expr, _parse_term(tokens))
        else:
            return expr


def _parse_term(tokens: _Tokens) -> Expression:
    expr = _parse_unary(tokens)
    while True:
        item = tokens.peek()
        if item and item[0] == "op" and item[1] in "*/":
            tokens.next()
            expr = BinOp(item[1], expr, _parse_unary(tokens))
        else:
            return expr


def _parse_unary(tokens: _Tokens) -> Expression:
    item = tokens.peek()
    if item and item[0] == "op" and item[1] == "-":
        tokens.next()
        inner = _parse_unary(tokens)
        if isinstance(inner, Num):
            return Num(-inner.value)
        if isinstance(inner, Dec):
            return Dec(-inner.value)
        return Neg(inner)
    return _parse_power(tokens)


def _parse_power(tokens: _Tokens) -> Expression:
    base = _parse_atom(tokens)
    item = tokens.peek()
    if item and item[0] == "op" and item[1] == "**":
        tokens.next()
        return BinOp("**", base, _parse_unary(tokens))
    return base


def _parse_atom(tokens: _Tokens) -> Expression:
    item = tokens.next()
    pos = tokens.position(item)
    if item is None:
        raise ExprParseError("unexpected end of input", pos)
    kind, value, _ = item
    if kind == "number":
        if "." in value:
            return Dec(ExactDecimal.from_string(value))
        return Num(Fraction(int(value)))
    if kind == "name":
        nxt = tokens.peek()
        if nxt and nxt[0] == "op" and nxt[1] == "(":
            tokens.next()
            arg = _parse_sum(tokens)
            tokens.expect_op(")")
            return Call(value, arg)
        if len(value) != 1:
            raise ExprParseError(f"unknown name {value!r}", pos)
        return Var(value)
    if kind == "op" and value == "(":
        expr = _parse_sum(tokens)
        tokens.expect_op(")")
        return expr
    raise ExprParseError(f"unexpected {value!r}", pos)


# --------------------------------------------------------------------------
# Exact evaluation
# --------------------------------------------------------------------------

def evaluate(e: Expression, env: Optional[dict] = None) -> Fraction:
    """Evaluate to an exact rational. env maps names to values or callables."""
    env = env or {}
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Dec):
        return e.value.to_fraction()
    if isinstance(e, Var):
        if e.name not in env:
            raise InvalidInputError(f"unbound variable {e.name!r}")
        return Fraction(env[e.name])
    if isinstance(e, Neg):
        return -evaluate(e.arg, env)
    if isinstance(e, Call):
        fn = env.get(e.func)
        if fn is None:
            raise InvalidInputError(f"unbound function {e.func!r}")
        return fn(evaluate(e.arg, env))
    if isinstance(e, BinOp):
        left = evaluate(e.left, env)
        if e.op == "**":
            exponent = evaluate(e.right, env)
            if exponent.denominator != 1:
                raise InvalidInputError("fractional exponent in evaluation")
            return left ** int(exponent)
        right = evaluate(e.right, env)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return left * right
        if right == 0:
            raise ContractViolation("division by zero")
        return left / right
    raise TypeError(f"not an expression: {e!r}")
