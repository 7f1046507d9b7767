from __future__ import annotations

import random
from fractions import Fraction

from dunklweyl.scalars import GaussianRational, ScalarPoly
from dunklweyl.spherical import InvariantPoly, invariant_monomials, star
from dunklweyl.trace import (
    ch_phi,
    class_scalar,
    phi,
    recursion_scalar,
    star_power,
    trace_defect,
)

M = InvariantPoly.monomial


def ih1_times(rational_part: Fraction, h2_part: Fraction) -> ScalarPoly:
    """i*h1*(rational_part + h2_part * h2)."""
    return ScalarPoly(
        {
            (1, 0): GaussianRational.of(0, rational_part),
            (1, 1): GaussianRational.of(0, h2_part),
        }
    )


class TestPhi:
    def test_normalization(self):
        assert phi(InvariantPoly.one()) == ScalarPoly.one()

    def test_off_diagonal_vanishes(self):
        for p, q in ((2, 0), (0, 2), (3, 1), (1, 3), (4, 2), (5, 1)):
            assert phi(M(p, q)).is_zero()

    def test_zzb(self):
        assert phi(InvariantPoly.zzbar()) == ih1_times(Fraction(1, 2), Fraction(1))

    def test_z2zb2(self):
        # (i h1)^2 (1/2 + h2)(1 - 2 h2/3)
        want = ih1_times(Fraction(1, 2), Fraction(1)) * ih1_times(
            Fraction(1), Fraction(-2, 3)
        )
        assert phi(M(2, 2)) == want

    def test_linearity(self):
        rng = random.Random(0)
        for _ in range(20):
            a = ScalarPoly.monomial(
                GaussianRational.of(Fraction(rng.randint(-3, 3), rng.randint(1, 3))),
                rng.randint(0, 1),
                rng.randint(0, 1),
            )
            b = ScalarPoly.from_rational(Fraction(rng.randint(-3, 3)))
            f, g = M(2, 2), InvariantPoly.zzbar()
            lhs = phi(f.scale(a) + g.scale(b))
            assert lhs == a * phi(f) + b * phi(g)

    def test_value_shape_for_degree_2d(self):
        # h1 exponents stay within 0..d and every term has h2 <= h1
        for m in invariant_monomials(12):
            value = phi(m)
            lo, hi = value.h1_range()
            assert lo >= 0 and hi <= m.degree() // 2
            assert value.h2_bounded_by_h1()


class TestRecursionScalars:
    def test_frozen_values(self):
        expected = {
            1: (Fraction(1, 2), Fraction(1)),
            2: (Fraction(1), Fraction(-2, 3)),
            3: (Fraction(3, 2), Fraction(1)),
            4: (Fraction(2), Fraction(-4, 5)),
            5: (Fraction(5, 2), Fraction(1)),
            6: (Fraction(3), Fraction(-6, 7)),
        }
        for k, (const, lin) in expected.items():
            assert recursion_scalar(k) == ih1_times(const, lin), f"k={k}"

    def test_class_scalar_is_product(self):
        acc = ScalarPoly.one()
        for k in range(1, 7):
            acc = acc * recursion_scalar(k)
            assert class_scalar(k) == acc


class TestTraceDefect:
    def test_examples(self):
        assert trace_defect(M(2, 0), M(0, 2)).is_zero()
        assert trace_defect(M(2, 2), InvariantPoly.one()).is_zero()
        assert trace_defect(M(3, 1), M(1, 3)).is_zero()

    def test_small_sweep(self):
        for m1 in invariant_monomials(6):
            for m2 in invariant_monomials(6 - m1.degree()):
                assert trace_defect(m1, m2).is_zero()


class TestStarPower:
    def test_trivial_powers(self):
        zzb = InvariantPoly.zzbar()
        assert star_power(zzb, 0) == InvariantPoly.one()
        assert star_power(zzb, 1) == zzb
        assert star_power(zzb, 2) == star(zzb, zzb)


class TestChPhi:
    def test_first_coefficients(self):
        series = ch_phi(6)
        assert series.coeffs[0] == ScalarPoly.one()
        assert series.coeffs[1] == ih1_times(Fraction(1, 2), Fraction(1))

    def test_termwise_exponential_oracle(self):
        # coefficient of t^k equals phi((z zb)^k) / k! with plain powers:
        # the trace of the termwise exponential of t*z*zb
        series = ch_phi(6)
        zzb = InvariantPoly.zzbar()
        fact = 1
        for k in range(7):
            if k:
                fact *= k
            oracle = phi(zzb.poly_pow(k)).scale(GaussianRational.of(Fraction(1, fact)))
            assert series.coeffs[k] == oracle, f"k={k}"

    def test_star_powers_differ_from_plain_powers(self):
        # The star square of z*zb is z^2 zb^2 - i h1 (1 - 2 h2) z zb, and its
        # trace is -(4/3) h1^2 h2 (1/2 + h2): NOT the closed-form coefficient.
        # This pins down why the character series is the trace of the
        # termwise exponential, not of the star exponential.
        zzb = InvariantPoly.zzbar()
        got = phi(star_power(zzb, 2))
        want = ScalarPoly.monomial(GaussianRational.of(Fraction(-4, 3)), 2, 1) * ScalarPoly(
            {(0, 0): GaussianRational.of(Fraction(1, 2)), (0, 1): GaussianRational.of(1)}
        )
        assert got == want
        assert got != phi(zzb.poly_pow(2))
