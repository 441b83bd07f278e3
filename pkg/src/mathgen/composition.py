"""Chaining of modules into multi-step questions.

Producers contribute "Let ..." / "Suppose ..." clauses that define named
entities (integers or polynomial functions); the final module's question
sentence consumes them. Solving happens node by node in plan order; the
verification path re-reads the finished text instead, so the two routes
stay independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import expressions as ex
from .expressions import format_expression
from .numeric import InvalidInputError
from .sampling import EntropyBudget, RandomStream, allocate
from .symbolic import (FunctionDef, Polynomial, compose, format_polynomial)
from .factory.backward import backward_generate_arithmetic
from .factory.base import (LETTER_POOL, QUESTION_LIMIT, RetrySignal,
                           allocate_digits, draw_int, draw_signed_with_zero,
                           pick)

ENTITY_KINDS = ("integer", "rational", "decimal", "function", "boolean",
                "letter-bag")

# geometric-flavoured depth distribution over {0,1,2,3}, mean just under 1
_DEPTH_CHOICES = (0,) * 8 + (1,) * 4 + (2,) * 2 + (3,) * 2


@dataclass
class SubProblem:
    kind: str  # fn_literal | fn_compose | fn_combine | int_arith |
               # int_linear_1d | int_fn_eval | final
    name: Optional[str]
    clause: Optional[str]
    value: object
    surface: Optional[str] = None
    refs: tuple[int, ...] = ()


@dataclass
class CompositionPlan:
    nodes: list[SubProblem]
    final_sentence: str = ""
    answer: object = None

    @property
    def clauses(self) -> list[str]:
        return [n.clause for n in self.nodes if n.clause]

    def question(self) -> str:
        return " ".join(self.clauses + [self.final_sentence])


class GenContext:
    """Everything a module generator needs while building one question."""

    def __init__(self, stream: RandomStream, budget: EntropyBudget,
                 split: str, alpha: float, params: dict):
        self.stream = stream
        self.budget = budget  # the final module's budget share
        self.split = split
        self.alpha = alpha
        self.params = params
        self.plan = CompositionPlan(nodes=[])
        self.functions: list[FunctionDef] = []
        self.composed: Optional[tuple[str, int]] = None
        self.used_letters: set[str] = set()

    def param(self, name: str, default):
        return self.params.get(name, default)

    def fresh_letter(self) -> str:
        free = [c for c in LETTER_POOL if c not in self.used_letters]
        if not free:
            raise RetrySignal("letter pool exhausted")
        letter = pick(self.stream, free)
        self.used_letters.add(letter)
        return letter

    def reserve_letters(self, letters) -> None:
        self.used_letters |= set(letters)

    def take_composed(self) -> Optional[tuple[str, int]]:
        out, self.composed = self.composed, None
        return out

    def add_node(self, node: SubProblem) -> int:
        self.plan.nodes.append(node)
        return len(self.plan.nodes) - 1


def draw_depth(stream: RandomStream) -> int:
    return pick(stream, _DEPTH_CHOICES)


# --------------------------------------------------------------------------
# Function producers
# --------------------------------------------------------------------------

def _scaled_call(c: int, fname: str, var: str) -> str:
    if c == 1:
        return f"{fname}({var})"
    if c == -1:
        return f"-{fname}({var})"
    return f"{c}*{fname}({var})"


def _combine_clause(name, var, c1, f, c2, g) -> str:
    head = _scaled_call(c1, f, var)
    tail = f"{abs(c2)}*{g}({var})" if abs(c2) != 1 else f"{g}({var})"
    op = " - " if c2 < 0 else " + "
    return f"Let {name}({var}) = {head}{op}{tail}."


def build_function(ctx: GenContext, budget: EntropyBudget, depth: int,
                   degree_lo: int = 1, degree_hi: int = 1) -> tuple[int, FunctionDef]:
    """A producer subtree yielding a named polynomial function."""
    if depth <= 0:
        name = ctx.fresh_letter()
        var = ctx.fresh_letter()
        degree = pick(ctx.stream, range(degree_lo, degree_hi + 1))
        digits = allocate_digits(ctx.stream, budget.remaining, degree + 1,
                                 lo=1, hi=6)
        coeffs = [draw_signed_with_zero(ctx.stream, budget, d, "fn-coeff")
                  for d in digits[:-1]]
        coeffs.append(draw_int(ctx.stream, budget, digits[-1], "fn-lead"))
        body = Polynomial.univariate(var, coeffs)
        fn = FunctionDef(name, var, body)
        clause = f"Let {fn.render()}."
        index = ctx.add_node(SubProblem("fn_literal", name, clause, fn))
        return index, fn

    kind = pick(ctx.stream, ("compose", "combine"))
    inner_depth = pick(ctx.stream, range(depth))
    if kind == "compose":
        # linear children keep composed degrees in check
        b_f, b_g = allocate(budget, [1, 1])
        i_f, f = build_function(ctx, b_f, depth - 1, 1, 1)
        i_g, g = build_function(ctx, b_g, inner_depth, 1, 1)
        name = ctx.fresh_letter()
        var = ctx.fresh_letter()
        body = compose(f, g).rename_variable(g.var, var)
        fn = FunctionDef(name, var, body)
        clause = f"Let {name}({var}) = {f.name}({g.name}({var}))."
        index = ctx.add_node(
            SubProblem("fn_compose", name, clause, fn, refs=(i_f, i_g)))
        return index, fn

    b_f, b_g, b_own = allocate(budget, [2, 2, 1])
    i_f, f = build_function(ctx, b_f, depth - 1, degree_lo, degree_hi)
    i_g, g = build_function(ctx, b_g, inner_depth, degree_lo, degree_hi)
    c1 = draw_int(ctx.stream, b_own, 2, "combine-c1")
    c2 = draw_int(ctx.stream, b_own, 2, "combine-c2")
    name = ctx.fresh_letter()
    var = ctx.fresh_letter()
    body = (f.body.rename_variable(f.var, var).scale(c1)
            + g.body.rename_variable(g.var, var).scale(c2))
    if body.is_zero or body.is_constant:
        raise RetrySignal("combination collapsed to a constant")
    fn = FunctionDef(name, var, body)
    clause = _combine_clause(name, var, c1, f.name, c2, g.name)
    index = ctx.add_node(
        SubProblem("fn_combine", name, clause, fn, refs=(i_f, i_g)))
    return index, fn


# --------------------------------------------------------------------------
# Integer producers
# --------------------------------------------------------------------------

def build_integer(ctx: GenContext, budget: EntropyBudget,
                  depth: int) -> tuple[str, int]:
    """A producer yielding (surface, integer value); surface is either a
    defined name or an inline application like e(9)."""
    kind = pick(ctx.stream, ("arith", "linear_1d", "fn_eval"))
    if kind == "arith":
        name = ctx.fresh_letter()
        share = max(2.0, budget.remaining)
        digits = allocate_digits(ctx.stream, share, 2, lo=1, hi=10)
        value = draw_int(ctx.stream, budget, digits[0], "let-value")
        ops = pick(ctx.stream, (1, 1, 2))
        expr = backward_generate_arithmetic(ctx.stream, budget, value, ops,
                                            allowed="+-", digits=digits[1])
        clause = f"Let {name} = {format_expression(expr)}."
        ctx.add_node(SubProblem("int_arith", name, clause, value))
        return name, value

    if kind == "linear_1d":
        name = ctx.fresh_letter()
        share = max(3.0, budget.remaining)
        digits = allocate_digits(ctx.stream, share, 3, lo=1, hi=8)
        solution = draw_int(ctx.stream, budget, digits[0], "eq-solution")
        a = draw_int(ctx.stream, budget, digits[1], "eq-a")
        b = draw_signed_with_zero(ctx.stream, budget, digits[2], "eq-b")
        c = a * solution + b
        lhs = format_polynomial(Polynomial.univariate(name, [b, a]))
        clause = f"Suppose {lhs} = {c}."
        ctx.add_node(SubProblem("int_linear_1d", name, clause, solution))
        return name, solution

    b_fn, b_point = allocate(budget, [3, 1])
    index, fn = build_function(ctx, b_fn, max(0, depth - 1), 1, 2)
    point_digits = min(4, max(1, math.ceil(b_point.remaining)))
    point = draw_int(ctx.stream, b_point, point_digits, "eval-point")
    value = fn(point)
    surface = f"{fn.name}({point})"
    ctx.add_node(SubProblem("int_fn_eval", None, None, int(value),
                            surface=surface, refs=(index,)))
    return surface, int(value)


# --------------------------------------------------------------------------
# Plan-level entry points
# --------------------------------------------------------------------------

def prepare_context(spec, stream: RandomStream, budget: EntropyBudget,
                    split: str, alpha: float, params: dict) -> GenContext:
    """Build producer nodes for a module before its generator runs."""
    ctx = GenContext(stream, budget, split, alpha, params)
    composable = getattr(spec, "composable", False)
    slots = getattr(spec, "function_slots", 0)
    if slots:
        budgets = allocate(budget, [1] * (slots + 1))
        ctx.budget = budgets[-1]
        lo, hi = params.get("fn_degree", (1, 2))
        for i in range(slots):
            depth = draw_depth(stream.child(f"slot{i}")) if composable else 0
            _, fn = build_function(ctx, budgets[i], depth, lo, hi)
            ctx.functions.append(fn)
    elif composable == "function":
        depth = draw_depth(stream.child("slot0"))
        if depth > 0:
            fn_budget, final_budget = allocate(budget, [2, 1])
            ctx.budget = final_budget
            lo, hi = params.get("fn_degree", (1, 3))
            _, fn = build_function(ctx, fn_budget, depth - 1, lo, hi)
            ctx.functions.append(fn)
    elif composable == "integer":
        depth = draw_depth(stream.child("slot0"))
        if depth > 0:
            prod_budget, final_budget = allocate(budget, [1, 1])
            ctx.budget = final_budget
            ctx.composed = build_integer(ctx, prod_budget, depth)
    return ctx


def finish_plan(ctx: GenContext, sentence: str, answer) -> CompositionPlan:
    plan = ctx.plan
    plan.final_sentence = sentence
    plan.answer = answer
    ctx.add_node(SubProblem("final", None, None, answer))
    if len(plan.question()) > QUESTION_LIMIT:
        raise RetrySignal("composed question too long")
    return plan
