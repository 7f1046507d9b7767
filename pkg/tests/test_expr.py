from __future__ import annotations

import random
from fractions import Fraction

import pytest

from dunklweyl.algebra import SrcElement, commutator
from dunklweyl.exprs import (
    EvalError,
    ParseError,
    element_to_text,
    eval_element,
    eval_local,
    invariant_to_text,
    parse,
    parse_element,
    parse_invariant,
    parse_scalar,
    scalar_to_text,
)
from dunklweyl.scalars import GaussianRational, ScalarPoly
from dunklweyl.spherical import InvariantPoly


def random_element(rng, max_degree=8):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        p = rng.randint(0, max_degree)
        q = rng.randint(0, max_degree - p)
        eps = rng.randint(0, 1)
        terms[(p, q, eps)] = ScalarPoly.monomial(
            GaussianRational.of(
                Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
                Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
            )
            if rng.random() < 0.8
            else GaussianRational.of(1),
            rng.randint(-1, 2),
            rng.randint(0, 2),
        )
    terms = {k: c for k, c in terms.items() if not c.is_zero()}
    if not terms:
        terms = {(1, 0, 0): ScalarPoly.one()}
    return SrcElement(terms)


class TestParse:
    def test_commutator_expression(self):
        e = parse_element("z*zb - zb*z")
        assert e == commutator(SrcElement.z(), SrcElement.zb())

    def test_negative_h1_power(self):
        e = parse_element("h1^-1 * (z^2*zb^2)")
        assert e == SrcElement.monomial(2, 2, 0, ScalarPoly.h1(-1))

    def test_negative_generator_power_rejected(self):
        with pytest.raises(ParseError):
            parse("z^-1")

    def test_negative_power_only_on_h1(self):
        for bad in ("h2^-1", "g^-2", "(z)^-1", "2^-1"):
            with pytest.raises(ParseError):
                parse(bad)

    def test_unknown_name(self):
        with pytest.raises(ParseError) as err:
            parse("z*w + 1")
        assert err.value.pos == 2

    def test_error_position_and_expectations(self):
        with pytest.raises(ParseError) as err:
            parse("z*")
        assert err.value.pos == 2
        with pytest.raises(ParseError) as err:
            parse("z @ zb")
        assert err.value.pos == 2

    def test_unbalanced_paren(self):
        with pytest.raises(ParseError):
            parse("(z + zb")

    def test_leading_minus_only_for_rationals(self):
        assert parse_element("-2*z") == SrcElement.monomial(1, 0, 0, ScalarPoly.from_rational(-2))
        with pytest.raises(ParseError):
            parse("-z")

    def test_exponent_overflow(self):
        with pytest.raises(ParseError) as err:
            parse("z^99999999")
        assert "overflow" in str(err.value)

    def test_mandatory_star(self):
        with pytest.raises(ParseError):
            parse("2 z")

    def test_rationals(self):
        assert parse_scalar("3/2") == ScalarPoly.from_rational(Fraction(3, 2))
        assert parse_scalar("-3/2 + i") == ScalarPoly.from_rational(Fraction(-3, 2), 1)
        with pytest.raises(ParseError):
            parse("1/0")


class TestEval:
    def test_xy_relation(self):
        got = parse_element("y*x - x*y")
        want = SrcElement.monomial(
            0, 0, 0, ScalarPoly.monomial(GaussianRational.of(Fraction(1, 2)), 1, 0)
        ) + SrcElement.monomial(0, 0, 1, ScalarPoly.monomial(GaussianRational.of(1), 1, 1))
        assert got == want

    def test_gamma_square(self):
        assert parse_element("g*g") == SrcElement.one()

    def test_base_vars_rejected_outside_local_model(self):
        with pytest.raises(EvalError):
            parse_element("p1*q1")

    def test_eval_local(self):
        le = eval_local(parse("p1*q1*z*zb"), 1)
        assert not le.is_zero()
        with pytest.raises(EvalError):
            eval_local(parse("p2*z"), 1)

    def test_parse_invariant_guards(self):
        assert parse_invariant("z^2*zb^2") == InvariantPoly.monomial(2, 2)
        with pytest.raises(Exception):
            parse_invariant("z")
        with pytest.raises(Exception):
            parse_invariant("g")


class TestPrint:
    def test_unit(self):
        assert element_to_text(SrcElement.one()) == "1"
        assert scalar_to_text(ScalarPoly.zero()) == "0"

    def test_canonical_order(self):
        e = SrcElement.monomial(
            0, 0, 0, ScalarPoly.monomial(GaussianRational.of(0, 1), 1, 0)
        ) + SrcElement.monomial(0, 0, 1, ScalarPoly.monomial(GaussianRational.of(0, 2), 1, 1))
        assert element_to_text(e) == "i*h1 + 2*i*h1*h2*g"

    def test_negative_leading_coefficients_stay_parseable(self):
        cases = [
            SrcElement.monomial(1, 0, 0, ScalarPoly.from_rational(-1)),
            SrcElement.monomial(1, 0, 0, ScalarPoly.from_rational(0, -1)),
            SrcElement.monomial(0, 0, 0, ScalarPoly.from_rational(Fraction(-3, 2), -1)),
            SrcElement.monomial(2, 0, 1, ScalarPoly.monomial(GaussianRational.of(-2, 3), -1, 2)),
        ]
        for e in cases:
            text = element_to_text(e)
            assert parse_element(text) == e, text

    def test_mixed_coefficient_parenthesized(self):
        e = SrcElement.monomial(1, 1, 0, ScalarPoly.from_rational(1, 1))
        assert element_to_text(e) == "(1+i)*z*zb"

    def test_invariant_printing(self):
        f = InvariantPoly.monomial(1, 1, ScalarPoly.h1())
        assert invariant_to_text(f) == "h1*z*zb"


class TestRoundTrip:
    def test_many_random_elements(self):
        rng = random.Random(123)
        for _ in range(300):
            e = random_element(rng)
            text = element_to_text(e)
            assert parse_element(text) == e, text

    def test_engine_outputs(self):
        rng = random.Random(77)
        for _ in range(50):
            a, b = random_element(rng, 4), random_element(rng, 4)
            e = commutator(a, b)
            assert parse_element(element_to_text(e)) == e
