"""Sparse multivariate polynomials, surds and their canonical renderings.

Polynomials are maps monomial -> nonzero rational coefficient. Rendering
order is descending total degree with lexicographic variable order inside a
degree, which reproduces forms like ``546*a**2 - 108*a - 118``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from . import expressions as ex
from .expressions import ContractViolation, Expression
from .numeric import ExactDecimal, InvalidInputError, prime_factorize


@dataclass(frozen=True)
class Monomial:
    """A product of variables with positive integer exponents."""

    powers: tuple[tuple[str, int], ...]  # sorted by variable, no zero exps

    @staticmethod
    def of(mapping: Mapping[str, int] | Iterable[tuple[str, int]] = ()) -> "Monomial":
        items = dict(mapping)
        for v, k in items.items():
            if k < 0:
                raise InvalidInputError(f"negative exponent {v}**{k}")
        return Monomial(tuple(sorted((v, k) for v, k in items.items() if k)))

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.powers)

    def variables(self) -> set[str]:
        return {v for v, _ in self.powers}

    def __mul__(self, other: "Monomial") -> "Monomial":
        merged = dict(self.powers)
        for v, k in other.powers:
            merged[v] = merged.get(v, 0) + k
        return Monomial.of(merged)

    def sort_key(self):
        # descending total degree, then lexicographic exponent vectors
        return (-self.degree, tuple((v, -k) for v, k in self.powers))


ONE = Monomial(())


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] = ()):
        cleaned = {m: Fraction(c) for m, c in dict(terms).items() if c != 0}
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    @staticmethod
    def constant(c) -> "Polynomial":
        return Polynomial({ONE: Fraction(c)})

    @staticmethod
    def variable(name: str) -> "Polynomial":
        return Polynomial({Monomial.of({name: 1}): Fraction(1)})

    @staticmethod
    def univariate(var: str, coefficients: Iterable) -> "Polynomial":
        """Build from low-to-high coefficients: [c0, c1, c2] -> c2 v^2 + ..."""
        terms = {}
        for k, c in enumerate(coefficients):
            if c:
                terms[Monomial.of({var: k} if k else {})] = Fraction(c)
        return Polynomial(terms)

    # -- structure --------------------------------------------------------

    def variables(self) -> set[str]:
        out: set[str] = set()
        for m in self.terms:
            out |= m.variables()
        return out

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(m == ONE for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise InvalidInputError("polynomial is not constant")
        return self.terms.get(ONE, Fraction(0))

    def degree_in(self, var: str) -> int:
        return max((dict(m.powers).get(var, 0) for m in self.terms), default=0)

    def total_degree(self) -> int:
        return max((m.degree for m in self.terms), default=0)

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def univariate_coefficients(self, var: str) -> list[Fraction]:
        """Low-to-high coefficient list; polynomial must use only `var`."""
        if self.variables() - {var}:
            raise InvalidInputError("polynomial is not univariate")
        out = [Fraction(0)] * (self.degree_in(var) + 1)
        for m, c in self.terms.items():
            out[dict(m.powers).get(var, 0)] = c
        return out

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return Polynomial(terms)

    def __neg__(self) -> "Polynomial":
        return self.scale(-1)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return Polynomial(terms)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise InvalidInputError("negative polynomial power")
        out = Polynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def substitute(self, var: str, replacement: "Polynomial") -> "Polynomial":
        out = Polynomial()
        for m, c in self.terms.items():
            term = Polynomial.constant(c)
            for v, k in m.powers:
                base = replacement if v == var else Polynomial.variable(v)
                term = term * base ** k
            out = out + term
        return out

    def rename_variable(self, old: str, new: str) -> "Polynomial":
        return self.substitute(old, Polynomial.variable(new))


def poly_add(parts: Iterable[tuple[Fraction, Polynomial]]) -> Polynomial:
    """Exact linear combination sum(scalar * polynomial)."""
    out = Polynomial()
    for scalar, p in parts:
        out = out + p.scale(scalar)
    return out


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def differentiate(p: Polynomial, var: str, order: int = 1) -> Polynomial:
    if order < 1:
        raise InvalidInputError("derivative order must be positive")
    for _ in range(order):
        terms: dict[Monomial, Fraction] = {}
        for m, c in p.terms.items():
            powers = dict(m.powers)
            k = powers.get(var, 0)
            if k == 0:
                continue
            powers[var] = k - 1
            dm = Monomial.of(powers)
            terms[dm] = terms.get(dm, Fraction(0)) + c * k
        p = Polynomial(terms)
    return p


def evaluate_poly(p: Polynomial, assignment: Mapping[str, Fraction]) -> Fraction:
    missing = p.variables() - set(assignment)
    if missing:
        raise InvalidInputError(f"missing assignment for {sorted(missing)}")
    total = Fraction(0)
    for m, c in p.terms.items():
        value = c
        for v, k in m.powers:
            value *= Fraction(assignment[v]) ** k
        total += value
    return total


@dataclass(frozen=True)
class FunctionDef:
    """A named single-variable polynomial function, e.g. x(g) = 9*g + 1."""

    name: str
    var: str
    body: Polynomial

    def __call__(self, point) -> Fraction:
        return evaluate_poly(self.body, {self.var: Fraction(point)})

    def render(self) -> str:
        return f"{self.name}({self.var}) = {format_polynomial(self.body)}"


def compose(f: FunctionDef, g: FunctionDef) -> Polynomial:
    """f(g(.)) expanded, expressed in g's formal variable."""
    return f.body.substitute(f.var, g.body)


def coefficient_named(factors: Iterable[Polynomial], var: str, degree: int,
                      template_degree: int) -> Fraction:
    """Coefficient of var**degree in the expanded product of `factors`."""
    product = Polynomial.constant(1)
    for f in factors:
        product = product * f
    if product.degree_in(var) != template_degree:
        raise InvalidInputError("expanded degree does not match the template")
    if degree > template_degree:
        raise InvalidInputError("requested power outside the template")
    return product.coefficient(Monomial.of({var: degree} if degree else {}))


# --------------------------------------------------------------------------
# Rendering
# --------------------------------------------------------------------------

def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _format_term(m: Monomial, c: Fraction) -> str:
    """Unsigned term body, e.g. (x*y, 3/2) -> '3*x*y/2'."""
    c = abs(c)
    body = "*".join(v if k == 1 else f"{v}**{k}" for v, k in m.powers)
    if not body:
        return format_rational(c)
    out = body if c.numerator == 1 else f"{c.numerator}*{body}"
    if c.denominator != 1:
        out += f"/{c.denominator}"
    return out


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero:
        return "0"
    parts = []
    for m in sorted(p.terms, key=Monomial.sort_key):
        c = p.terms[m]
        text = _format_term(m, c)
        if not parts:
            parts.append(f"-{text}" if c < 0 else text)
        else:
            parts.append(f" - {text}" if c < 0 else f" + {text}")
    return "".join(parts)


def format_entity(value) -> str:
    """Canonical answer rendering for any produced entity."""
    if isinstance(value, bool):
        return "True" if value else "False"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, ExactDecimal):
        return str(value)
    if isinstance(value, Polynomial):
        return format_polynomial(value)
    if isinstance(value, Surd):
        return format_surd(value)
    if isinstance(value, FunctionDef):
        return value.render()
    if isinstance(value, (list, tuple)):
        return ", ".join(format_entity(v) for v in value)
    if isinstance(value, str):
        return value
    return ex.format_expression(value)


# --------------------------------------------------------------------------
# Expression -> polynomial / surd interpretation
# --------------------------------------------------------------------------

def to_polynomial(e: Expression, env: Optional[dict] = None) -> Polynomial:
    """Interpret an expression tree as an exact polynomial.

    env may bind single letters to FunctionDef (for applications like f(x))
    or to exact values.
    """
    env = env or {}
    if isinstance(e, ex.Num):
        return Polynomial.constant(e.value)
    if isinstance(e, ex.Dec):
        return Polynomial.constant(e.value.to_fraction())
    if isinstance(e, ex.Var):
        bound = env.get(e.name)
        if bound is not None and not isinstance(bound, FunctionDef):
            return Polynomial.constant(Fraction(bound))
        return Polynomial.variable(e.name)
    if isinstance(e, ex.Neg):
        return -to_polynomial(e.arg, env)
    if isinstance(e, ex.Call):
        fn = env.get(e.func)
        if not isinstance(fn, FunctionDef):
            raise InvalidInputError(f"unknown function {e.func!r}")
        return fn.body.substitute(fn.var, to_polynomial(e.arg, env))
    if isinstance(e, ex.BinOp):
        left = to_polynomial(e.left, env)
        if e.op == "**":
            k = ex.evaluate(e.right, env)
            if k.denominator != 1 or k < 0:
                raise InvalidInputError("polynomial powers must be naturals")
            return left ** int(k)
        right = to_polynomial(e.right, env)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return left * right
        if not right.is_constant or right.constant_value() == 0:
            raise InvalidInputError("division only by nonzero constants")
        return left.scale(1 / right.constant_value())
    raise TypeError(f"not an expression: {e!r}")


def collect_terms(e: Expression) -> Polynomial:
    return to_polynomial(e)


# --------------------------------------------------------------------------
# Surds
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Surd:
    """coefficient * sqrt(radicand) with a square-free positive radicand."""

    coefficient: Fraction
    radicand: int

    def __post_init__(self):
        if self.radicand < 1:
            raise InvalidInputError("radicand must be positive")
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))

    @property
    def is_rational(self) -> bool:
        return self.radicand == 1 or self.coefficient == 0

    def squared(self) -> Fraction:
        return self.coefficient ** 2 * self.radicand


def _split_square(n: int) -> tuple[int, int]:
    """n = square * squarefree with n >= 1."""
    square, squarefree = 1, 1
    for p, k in prime_factorize(n) if n > 1 else []:
        square *= p ** (k // 2)
        if k % 2:
            squarefree *= p
    return square, squarefree


def make_surd(coefficient: Fraction, radicand: int) -> Surd:
    """Canonicalize coefficient*sqrt(radicand) (square-free radicand)."""
    if radicand < 0:
        raise InvalidInputError("negative radicand")
    if radicand == 0 or coefficient == 0:
        return Surd(Fraction(0), 1)
    root, squarefree = _split_square(radicand)
    return Surd(Fraction(coefficient) * root, squarefree)


def surd_mul(a: Surd, b: Surd) -> Surd:
    return make_surd(a.coefficient * b.coefficient, a.radicand * b.radicand)


def surd_div(a: Surd, b: Surd) -> Surd:
    if b.coefficient == 0:
        raise ContractViolation("division by zero surd")
    # 1/sqrt(d) = sqrt(d)/d
    return make_surd(a.coefficient / (b.coefficient * b.radicand),
                     a.radicand * b.radicand)


def simplify_surd(e: Expression) -> Surd:
    """Evaluate a *, /, +, - tree over square roots and rationals."""
    if isinstance(e, (ex.Num, ex.Dec)):
        value = ex.evaluate(e)
        return Surd(value, 1)
    if isinstance(e, ex.Neg):
        inner = simplify_surd(e.arg)
        return Surd(-inner.coefficient, inner.radicand)
    if isinstance(e, ex.Call) and e.func == "sqrt":
        inner = ex.evaluate(e.arg)
        if inner < 0:
            raise InvalidInputError("square root of a negative value")
        # sqrt(p/q) = sqrt(p*q)/q
        return make_surd(Fraction(1, inner.denominator),
                         inner.numerator * inner.denominator)
    if isinstance(e, ex.BinOp):
        if e.op == "**":
            base = simplify_surd(e.left)
            k = ex.evaluate(e.right)
            if k.denominator != 1 or k < 0:
                raise InvalidInputError("surd powers must be naturals")
            out = Surd(Fraction(1), 1)
            for _ in range(int(k)):
                out = surd_mul(out, base)
            return out
        left = simplify_surd(e.left)
        right = simplify_surd(e.right)
        if e.op == "*":
            return surd_mul(left, right)
        if e.op == "/":
            return surd_div(left, right)
        if left.coefficient == 0:
            left = Surd(Fraction(0), right.radicand)
        if right.coefficient == 0:
            right = Surd(Fraction(0), left.radicand)
        if left.radicand != right.radicand:
            raise InvalidInputError("sum is not a single surd")
        sign = 1 if e.op == "+" else -1
        return Surd(left.coefficient + sign * right.coefficient, left.radicand)
    raise InvalidInputError("expression is not a surd form")


def format_surd(s: Surd) -> str:
    if s.is_rational:
        return format_rational(s.coefficient)
    c = s.coefficient
    root = f"sqrt({s.radicand})"
    if c == 1:
        return root
    if c == -1:
        return f"-{root}"
    out = f"{c.numerator}*{root}" if abs(c.numerator) != 1 else (
        f"-{root}" if c.numerator < 0 else root)
    if c.denominator != 1:
        out += f"/{c.denominator}"
    return out


# --------------------------------------------------------------------------
# Roots and factorization over the rationals
# --------------------------------------------------------------------------

def poly_roots(p: Polynomial, var: Optional[str] = None) -> list[Fraction]:
    """All rational roots with multiplicity, ascending.

    The generator contract guarantees complete factorization over Q;
    anything irrational raises ContractViolation.
    """
    variables = p.variables()
    if var is None:
        if len(variables) != 1:
            raise InvalidInputError("root finding needs one variable")
        var = next(iter(variables))
    coeffs = p.univariate_coefficients(var)
    if len(coeffs) < 2:
        raise InvalidInputError("constant polynomial has no roots")
    roots: list[Fraction] = []
    while len(coeffs) > 1:
        root = _find_rational_root(coeffs)
        if root is None:
            raise ContractViolation(
                f"irrational factor left in {format_polynomial(p)}")
        roots.append(root)
        coeffs = _deflate(coeffs, root)
    return sorted(roots)


def _find_rational_root(coeffs: list[Fraction]) -> Optional[Fraction]:
    # clear denominators, then apply the rational root theorem
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    if ints[0] == 0:
        return Fraction(0)
    a0, an = abs(ints[0]), abs(ints[-1])
    ps = _divisors(a0)
    qs = _divisors(an)
    for q, pnum in itertools.product(qs, ps):
        for candidate in (Fraction(pnum, q), Fraction(-pnum, q)):
            if _poly_eval_coeffs(coeffs, candidate) == 0:
                return candidate
    return None


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _poly_eval_coeffs(coeffs: list[Fraction], x: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


def _deflate(coeffs: list[Fraction], root: Fraction) -> list[Fraction]:
    """Synthetic division by (x - root); remainder is known to be zero."""
    out = [Fraction(0)] * (len(coeffs) - 1)
    carry = Fraction(0)
    for i in range(len(coeffs) - 1, 0, -1):
        carry = coeffs[i] + carry * root
        out[i - 1] = carry
    return out


def factorization_of(p: Polynomial, var: str) -> tuple[Fraction, list[tuple[Polynomial, int]]]:
    """p = constant * prod(factor**mult) with primitive integer factors."""
    roots = poly_roots(p, var)
    constant = p.univariate_coefficients(var)[-1]
    factors: list[tuple[Polynomial, int]] = []
    for root in sorted(set(roots)):
        mult = roots.count(root)
        q, pnum = root.denominator, root.numerator
        factors.append((Polynomial.univariate(var, [-pnum, q]), mult))
        constant /= Fraction(q) ** mult
    return constant, factors


def format_factorization(constant: Fraction,
                         factors: list[tuple[Polynomial, int]]) -> str:
    parts = []
    for f, mult in factors:
        body = f"({format_polynomial(f)})"
        parts.append(body if mult == 1 else f"{body}**{mult}")
    joined = "*".join(parts)
    if constant == 1:
        return joined
    if constant == -1:
        return f"-{joined}"
    return f"{format_rational(constant)}*{joined}"
