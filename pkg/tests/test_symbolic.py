import random
from fractions import Fraction

import pytest

from mathgen import expressions as ex
from mathgen.expressions import ContractViolation, parse
from mathgen.numeric import InvalidInputError
from mathgen.symbolic import (
    FunctionDef, Monomial, Polynomial, coefficient_named, collect_terms,
    compose, differentiate, evaluate_poly, factorization_of,
    format_factorization, format_polynomial, format_rational, format_surd,
    make_surd, poly_add, poly_mul, poly_roots, simplify_surd, to_polynomial,
)


def P(text, env=None):
    return to_polynomial(parse(text), env)


def _random_poly(rng, variables="xy", max_degree=3, max_terms=4):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        powers = {v: rng.randint(0, max_degree) for v in variables}
        terms[Monomial.of(powers)] = Fraction(rng.randint(-20, 20))
    return Polynomial(terms)


class TestPolyArithmetic:
    def test_cancellation(self):
        assert poly_add([(Fraction(1), P("x + 1")), (Fraction(1), P("-x - 1"))]).is_zero

    def test_figure_combination(self):
        # -118*(-2c**3 + c) + 54*(-c**3 - c**2) = 182c**3 - 54c**2 - 118c
        out = poly_add([(Fraction(-118), P("-2*c**3 + c")),
                        (Fraction(54), P("-c**3 - c**2"))])
        assert format_polynomial(out) == "182*c**3 - 54*c**2 - 118*c"

    def test_linear_combination(self):
        out = poly_add([(Fraction(2), P("2*x + 3")), (Fraction(17), P("x - 4"))])
        assert format_polynomial(out) == "21*x - 62"

    def test_expand(self):
        assert format_polynomial(poly_mul(P("x + 1"), P("2*x + 3"))) == \
            "2*x**2 + 5*x + 3"
        assert poly_mul(P("x + 3"), Polynomial()).is_zero
        assert format_polynomial(poly_mul(P("x - 7"), P("x + 1"))) == \
            "x**2 - 6*x - 7"


class TestCompose:
    def test_intro_example(self):
        f = FunctionDef("f", "x", P("2*x + 3"))
        g = FunctionDef("g", "x", P("7*x - 4"))
        h = FunctionDef("h", "x", P("-5*x - 8"))
        hf = FunctionDef("t", "x", compose(h, f))
        assert format_polynomial(compose(g, hf)) == "-70*x - 165"

    def test_figure_chain(self):
        x = FunctionDef("x", "g", P("9*g + 1"))
        q = FunctionDef("q", "c", P("2*c + 1"))
        f = FunctionDef("f", "i", P("3*i - 39"))
        w = FunctionDef("w", "j", compose(q, x).rename_variable("g", "j"))
        answer = compose(f, w).rename_variable("j", "a")
        assert format_polynomial(answer) == "54*a - 30"

    def test_identity(self):
        identity = FunctionDef("i", "x", P("x"))
        p = FunctionDef("p", "x", P("3*x**2 - 1"))
        assert compose(identity, p) == p.body

    def test_associativity(self):
        rng = random.Random(21)
        for _ in range(200):
            f = FunctionDef("f", "x", _random_poly(rng, "x"))
            g = FunctionDef("g", "x", _random_poly(rng, "x"))
            h = FunctionDef("h", "x", _random_poly(rng, "x"))
            gh = FunctionDef("t", "x", compose(g, h))
            fg = FunctionDef("s", "x", compose(f, g))
            assert compose(f, gh) == compose(fg, h)


class TestDifferentiate:
    def test_figure_example(self):
        body = P("182*a**3 - 54*a**2 - 118*a")
        assert format_polynomial(differentiate(body, "a")) == \
            "546*a**2 - 108*a - 118"

    def test_constant(self):
        assert differentiate(P("5"), "x").is_zero

    def test_mixed_partial(self):
        p = P("x**2*y**2 + 2*x*y")
        assert format_polynomial(differentiate(differentiate(p, "x"), "y")) == \
            "4*x*y + 2"

    def test_linearity(self):
        rng = random.Random(22)
        for _ in range(300):
            p = _random_poly(rng)
            q = _random_poly(rng)
            a, b = Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9))
            lhs = differentiate(poly_add([(a, p), (b, q)]), "x")
            rhs = poly_add([(a, differentiate(p, "x")), (b, differentiate(q, "x"))])
            assert lhs == rhs

    def test_finite_difference_check(self):
        rng = random.Random(23)
        h = Fraction(1, 10 ** 6)
        for _ in range(50):
            p = _random_poly(rng, "x", max_degree=4)
            t = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            slope = (evaluate_poly(p, {"x": t + h}) - evaluate_poly(p, {"x": t - h})) / (2 * h)
            exact = evaluate_poly(differentiate(p, "x"), {"x": t})
            # central difference error is O(h^2 * max third derivative scale)
            assert abs(slope - exact) <= Fraction(10 ** 9) * h ** 2


class TestEvaluate:
    def test_examples(self):
        assert evaluate_poly(P("x**2*y**2 + 2*x*y"), {"x": 2, "y": 3}) == 48
        assert evaluate_poly(P("3*x"), {"x": 0}) == 0
        k = FunctionDef("k", "c", P("-611*c + 2188857"))
        assert k(-103) == 2251790

    def test_missing_variable(self):
        with pytest.raises(InvalidInputError):
            evaluate_poly(P("x + y"), {"x": 1})


class TestCoefficientNamed:
    def test_examples(self):
        factors = [P("x + 1"), P("2*x + 3")]
        assert coefficient_named(factors, "x", 1, 2) == 5
        assert coefficient_named(factors, "x", 2, 2) == 2
        assert coefficient_named([P("x**2 + 1")], "x", 1, 2) == 0

    def test_degree_mismatch(self):
        with pytest.raises(InvalidInputError):
            coefficient_named([P("x + 1")], "x", 1, 2)


class TestCollect:
    def test_examples(self):
        assert format_polynomial(collect_terms(parse("5*x + 4*y + x - 7*y"))) == \
            "6*x - 3*y"
        assert collect_terms(parse("x - x")).is_zero
        assert format_polynomial(collect_terms(parse("3*(2*y - 5)"))) == "6*y - 15"


class TestRoots:
    def test_quadratic(self):
        p = P("2*x**2 + 5*x + 3")
        assert poly_roots(p) == [Fraction(-3, 2), Fraction(-1)]
        constant, factors = factorization_of(p, "x")
        assert format_factorization(constant, factors) == "(2*x + 3)*(x + 1)"

    def test_repeated_root(self):
        assert poly_roots(P("x**2")) == [0, 0]
        constant, factors = factorization_of(P("x**2 - 2*x + 1"), "x")
        assert format_factorization(constant, factors) == "(x - 1)**2"

    def test_exam_quadratic(self):
        assert poly_roots(P("x**2 - 12*x + 27")) == [3, 9]

    def test_back_substitution(self):
        rng = random.Random(24)
        for _ in range(200):
            roots = [Fraction(rng.randint(-9, 9), rng.randint(1, 3))
                     for _ in range(rng.randint(1, 4))]
            p = Polynomial.constant(rng.randint(1, 5))
            for r in roots:
                p = p * Polynomial.univariate("x", [-r.numerator, r.denominator])
            found = poly_roots(p)
            assert found == sorted(roots)
            for r in found:
                assert evaluate_poly(p, {"x": r}) == 0
            constant, factors = factorization_of(p, "x")
            rebuilt = Polynomial.constant(constant)
            for f, k in factors:
                rebuilt = rebuilt * f ** k
            assert rebuilt == p

    def test_irrational_contract(self):
        with pytest.raises(ContractViolation):
            poly_roots(P("x**2 - 2"))


class TestSurds:
    def test_appendix_example(self):
        e = parse("(sqrt(10)*-9)/(sqrt(2)*12)*-8")
        s = simplify_surd(e)
        assert (s.coefficient, s.radicand) == (6, 5)
        assert format_surd(s) == "6*sqrt(5)"

    def test_perfect_square(self):
        s = simplify_surd(parse("sqrt(4)"))
        assert s.is_rational and s.coefficient == 2

    def test_square_extraction(self):
        assert format_surd(simplify_surd(parse("sqrt(50)"))) == "5*sqrt(2)"

    def test_addition_of_like_surds(self):
        s = simplify_surd(parse("sqrt(8) + sqrt(2)"))
        assert format_surd(s) == "3*sqrt(2)"
        with pytest.raises(InvalidInputError):
            simplify_surd(parse("sqrt(2) + sqrt(3)"))

    def test_square_equality(self):
        rng = random.Random(25)
        for _ in range(300):
            a = rng.randint(1, 60)
            b = rng.randint(1, 12)
            c = rng.randint(-12, 12) or 3
            e = ex.mul(ex.div(ex.sqrt(ex.num(a)), ex.sqrt(ex.num(b))), ex.num(c))
            s = simplify_surd(e)
            assert s.squared() == Fraction(a, b) * c * c

    def test_rational_coefficient_rendering(self):
        assert format_surd(make_surd(Fraction(2, 3), 5)) == "2*sqrt(5)/3"
        assert format_surd(make_surd(Fraction(-1, 2), 8)) == "-sqrt(2)"
        assert format_surd(make_surd(Fraction(1), 1)) == "1"


class TestRendering:
    def test_golden_strings(self):
        assert format_polynomial(P("546*a**2 - 108*a - 118")) == \
            "546*a**2 - 108*a - 118"
        assert format_rational(Fraction(1, 110)) == "1/110"
        assert format_polynomial(P("n**2 + n")) == "n**2 + n"

    def test_term_order(self):
        p = P("y**2 + x**2 + x*y + y + x + 1")
        assert format_polynomial(p) == "x**2 + x*y + y**2 + x + y + 1"

    def test_rational_coefficients(self):
        p = Polynomial.univariate("n", [0, Fraction(1, 2), Fraction(1, 2)])
        assert format_polynomial(p) == "n**2/2 + n/2"
        p = Polynomial.univariate("x", [Fraction(3, 2), Fraction(-3, 2)])
        assert format_polynomial(p) == "-3*x/2 + 3/2"

    def test_round_trip(self):
        rng = random.Random(26)
        for _ in range(2000):
            p = _random_poly(rng)
            assert P(format_polynomial(p)) == p
