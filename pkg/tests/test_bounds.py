import math

import numpy as np
import pytest
from scipy import integrate as si

from convexbounds import bounds as B
from convexbounds.bounds import HypothesisError, RatioBounds, Variant
from convexbounds.funclib import Affine, ClassTag, Constant, Exponential, FunctionSpec, NonNegSum, Power, sample_certified
from convexbounds.quad import Interval

PRINTED, DERIVED = Variant.AS_PRINTED, Variant.AS_DERIVED


def F(fam, upper=1.0):
    return FunctionSpec(fam, upper)


ONE = F(Constant(1.0))
X = F(Affine(1.0, 0.0))


def oracle(fn, a, b):
    val, _ = si.quad(fn, a, b, epsabs=1e-14, epsrel=1e-13, limit=200)
    return val


class TestReport:
    def test_verdicts(self):
        assert B._report(1.0, 1.0, 0.0, 0).holds
        rep = B._report(2.0, 1.0, 1e-12, 0)
        assert rep.violated and rep.violation == pytest.approx(1.0)
        assert B._report(1.0, float("nan"), 0.0, 0).verdict == "Inconclusive"

    def test_tolerance_includes_rounding_budget(self):
        rep = B._report(1.0 + 5e-11, 1.0, 0.0, 0)
        assert rep.holds and rep.tol == pytest.approx(1e-10 * (1 + 5e-11))

    def test_variant_parse(self):
        assert Variant.parse("AsPrinted") is PRINTED
        assert Variant.parse("as_derived") is DERIVED
        with pytest.raises(ValueError):
            Variant.parse("typo")


class TestHermiteHadamard:
    def test_identity_is_tight_both_sides(self):
        left, right = B.hermite_hadamard_s(X, 1.0, (0.0, 1.0))
        assert left.lhs == pytest.approx(0.5) and left.rhs == pytest.approx(0.5)
        assert right.rhs == pytest.approx(0.5)
        assert abs(left.slack) <= 1e-12 and abs(right.slack) <= 1e-12

    @pytest.mark.parametrize("s", [0.25, 0.5, 0.75])
    def test_power_s_attains_right_side(self, s):
        _, right = B.hermite_hadamard_s(F(Power(1.0, s)), s, (0.0, 1.0))
        # mean of x^s on [0,1] is 1/(s+1), the right side is (0 + 1)/(s+1)
        assert right.lhs == pytest.approx(1 / (s + 1), abs=1e-10)
        assert abs(right.slack) <= 1e-9 and right.holds

    def test_left_side_value(self):
        # 2^(s-1) f((a+b)/2) for f = x^2 on [0, 2], s = 1/2
        f = F(Power(1.0, 2.0), 2.0)
        left, right = B.hermite_hadamard_s(f, 0.5, (0.0, 2.0))
        assert left.lhs == pytest.approx(2**-0.5 * 1.0)
        assert left.rhs == pytest.approx(4 / 3)
        assert right.rhs == pytest.approx((0 + 4) / 1.5)

    def test_hypothesis_checked(self):
        with pytest.raises(HypothesisError):
            B.hermite_hadamard_s(F(Power(1.0, 0.5)), 1.0, (0.0, 1.0))


class TestMinkowski:
    def test_values(self):
        # f = x, g = 1, p = 2 on [0, 1]: ||f+g|| = sqrt(7/3)
        rep = B.minkowski(X, ONE, 2.0, (0.0, 1.0))
        assert rep.lhs == pytest.approx(math.sqrt(7 / 3), abs=1e-12)
        assert rep.rhs == pytest.approx(math.sqrt(1 / 3) + 1.0, abs=1e-12)

    def test_p_one_is_equality(self):
        rep = B.minkowski(X, ONE, 1.0, (0.0, 1.0))
        assert abs(rep.slack) <= 1e-12

    def test_p_below_one_rejected(self):
        with pytest.raises(ValueError):
            B.minkowski(X, ONE, 0.5, (0.0, 1.0))


class TestReverseMinkowski:
    def test_constant_ratio(self):
        f = F(Constant(2.0), 2.0)
        g = F(Constant(1.0), 2.0)
        rb = B.estimate_ratio_bounds(f, g, (1.0, 2.0))
        assert rb.m_lo <= 2.0 <= rb.M_hi
        assert rb.c == pytest.approx(2 / 3 + 1 / 3, abs=1e-5)

    def test_c_formula(self):
        rb = RatioBounds(1.0, 3.0)
        assert rb.c == pytest.approx(3 / 4 + 1 / 2)

    def test_hand_value(self):
        # f = x+1, g = 1 on [0, 1], p = 1 with ratio bounds m=1, M=2: c = 2/3 + 1/2
        f, g = F(Affine(1.0, 1.0)), ONE
        rep = B.reverse_minkowski(f, g, 1.0, (0.0, 1.0), ratio=RatioBounds(1.0, 2.0))
        c = 2 / 3 + 1 / 2
        assert rep.lhs == pytest.approx(1.5 + 1.0)
        assert rep.rhs == pytest.approx(c * 2.5)
        assert rep.holds

    def test_ratio_outside_bounds(self):
        with pytest.raises(HypothesisError):
            B.reverse_minkowski(F(Affine(1.0, 1.0)), ONE, 1.0, (0.0, 1.0), ratio=RatioBounds(1.0, 1.5))

    def test_needs_positive_g(self):
        with pytest.raises(HypothesisError):
            B.estimate_ratio_bounds(ONE, X, (0.0, 1.0))


class TestMConvexProducts:
    def test_thm3_constants_equality(self):
        rep = B.thm3_exponent_product(ONE, ONE, 1.0, 1.0, (0.0, 1.0))
        assert rep.lhs == pytest.approx(1.0) and rep.rhs == pytest.approx(1.0)
        assert abs(rep.slack) <= 1e-12

    def test_thm3_same_function_collapses(self):
        # f^w f^(1-w) = f, so the left side is the mean of f
        f = F(NonNegSum((Affine(0.5, 0.2), Power(1.0, 2.5))), 2.0)
        rep = B.thm3_exponent_product(f, f, 1.0, 1.0, (0.5, 2.0))
        mean = oracle(lambda x: 0.5 * x + 0.2 + x**2.5, 0.5, 2.0) / 1.5
        assert rep.lhs == pytest.approx(mean, abs=1e-10)

    def test_thm3_needs_extended_domain(self):
        f = F(Affine(1.0, 0.0), 1.0)
        with pytest.raises(HypothesisError):
            B.thm3_exponent_product(f, f, 0.5, 0.5, (0.8, 1.0))

    def test_thm4_constants(self):
        rep = B.thm4_weighted_product(ONE, ONE, 1.0, 1.0, (0.0, 1.0))
        assert rep.lhs == pytest.approx(2.0) and rep.rhs == pytest.approx(2.0)

    def test_thm4_affine_is_an_identity(self):
        # for affine f, g and m = 1 the pointwise convexity bound is attained: both sides equal 14/3
        f = F(Affine(1.0, 0.0), 2.0)
        rep = B.thm4_weighted_product(f, f, 1.0, 1.0, (1.0, 2.0))
        assert rep.lhs == pytest.approx(14 / 3, abs=1e-12)
        assert rep.rhs == pytest.approx(14 / 3, abs=1e-12)

    def test_thm4_lhs_against_oracle(self):
        f = F(Power(1.0, 2.0), 3.0)
        g = F(Affine(2.0, 0.0), 3.0)
        a, b, m1, m2 = 1.0, 3.0, 0.5, 0.75
        L = b - a
        fb, gb, fa1, ga2 = 9.0, 6.0, 4.0, 2 * a / m2
        lhs = (
            gb / L**2 * oracle(lambda x: (x - a) * x**2, a, b)
            + m2 * ga2 / L**2 * oracle(lambda x: (b - x) * x**2, a, b)
            + fb / L**2 * oracle(lambda x: (x - a) * 2 * x, a, b)
            + m1 * fa1 / L**2 * oracle(lambda x: (b - x) * 2 * x, a, b)
        )
        rep = B.thm4_weighted_product(f, g, m1, m2, (a, b))
        assert rep.lhs == pytest.approx(lhs, rel=1e-11)
        assert rep.holds


class TestThm5:
    def test_printed_constants_violation(self):
        rep = B.thm5_minkowski_mconvex(ONE, ONE, 1.0, 1.0, 1.0, (0.0, 1.0), variant=PRINTED)
        assert rep.violated and rep.rhs == 0.0
        assert rep.violation == pytest.approx(2.0, abs=1e-5)

    def test_derived_constants_equality(self):
        rep = B.thm5_minkowski_mconvex(ONE, ONE, 1.0, 1.0, 1.0, (0.0, 1.0), ratio=RatioBounds(1.0, 1.0))
        assert rep.lhs == pytest.approx(2.0) and rep.rhs == pytest.approx(2.0)

    def test_derived_holds_p2(self):
        f = F(Affine(1.0, 1.0))
        rep = B.thm5_minkowski_mconvex(f, ONE, 2.0, 1.0, 1.0, (0.0, 1.0))
        assert rep.holds

    def test_printed_negative_radicand_is_inconclusive(self):
        f = F(Exponential(1.0, -1.0), 2.0)
        rep = B.thm5_minkowski_mconvex(f, f, 2.0, 1.0, 1.0, (0.5, 2.0), variant=PRINTED)
        assert rep.verdict == "Inconclusive"


class TestSConvex:
    def test_thm6_constants(self):
        rep = B.thm6_s_exponent_product(ONE, ONE, 1.0, 1.0, (0.0, 1.0))
        assert rep.rhs == pytest.approx(1.0, abs=1e-14)
        assert abs(rep.slack) <= 1e-12

    def test_thm6_sqrt(self):
        rep = B.thm6_s_exponent_product(F(Power(1.0, 0.5)), ONE, 0.5, 1.0, (0.0, 1.0))
        assert rep.holds

    def test_thm6_printed_fails_for_decreasing_g(self):
        f = F(Exponential(1.0, -2.0))
        printed = B.thm6_s_exponent_product(f, f, 1.0, 1.0, (0.0, 1.0), variant=PRINTED)
        derived = B.thm6_s_exponent_product(f, f, 1.0, 1.0, (0.0, 1.0), variant=DERIVED)
        mean = -math.expm1(-2.0) / 2.0
        assert printed.lhs == pytest.approx(mean, abs=1e-12)
        assert printed.violated and derived.holds

    def test_thm7_equality(self):
        rep = B.thm7_s_cauchy_product(X, X, 1.0, 0.5, (0.0, 1.0))
        assert rep.lhs == pytest.approx(0.5) and rep.rhs == pytest.approx(0.5)
        assert abs(rep.slack) <= 1e-12

    def test_thm7_alpha_one_is_hh_right(self):
        f = F(Power(2.0, 0.4), 2.0)
        g = F(Constant(3.0), 2.0)
        rep = B.thm7_s_cauchy_product(f, g, 0.4, 1.0, (0.0, 2.0))
        _, hh = B.hermite_hadamard_s(f, 0.4, (0.0, 2.0))
        assert rep.lhs == pytest.approx(hh.lhs, rel=1e-12)
        assert rep.rhs == pytest.approx(hh.rhs, rel=1e-14)


class TestLogConvex:
    def test_thm8_exp_equality(self):
        rep = B.thm8_log_cauchy_product(F(Exponential(1.0, 1.0)), ONE, 1.0, (0.0, 1.0))
        assert rep.lhs == pytest.approx(math.e - 1, abs=1e-12)
        assert rep.rhs == pytest.approx(math.e - 1, abs=1e-14)

    def test_thm8_constants(self):
        c = F(Constant(2.5))
        rep = B.thm8_log_cauchy_product(c, c, 0.3, (0.0, 1.0))
        assert abs(rep.slack) <= 1e-12

    def test_thm8_holds(self):
        rep = B.thm8_log_cauchy_product(F(Exponential(1.0, 1.0)), F(Exponential(1.0, 2.0)), 0.5, (0.0, 1.0))
        # f^(1/2) g^(1/2) = e^(1.5x)
        assert rep.lhs == pytest.approx(math.expm1(1.5) / 1.5, abs=1e-12)
        assert rep.holds

    def test_thm8_rejects_zero(self):
        with pytest.raises(HypothesisError):
            B.thm8_log_cauchy_product(X, ONE, 0.5, (0.0, 1.0))


class TestAlphaM:
    def test_thm9_coefficients(self):
        # alpha1 = 1/2, m1 = 1, constants: f(a/m1) coefficient 1/10 derived, 1/5 printed
        p = B.thm9_alpha_m_exponent_product(ONE, ONE, 0.5, 1.0, 1.0, 1.0, (0.0, 1.0), variant=PRINTED)
        d = B.thm9_alpha_m_exponent_product(ONE, ONE, 0.5, 1.0, 1.0, 1.0, (0.0, 1.0), variant=DERIVED)
        assert p.rhs - d.rhs == pytest.approx(1 / 5 - 1 / 10, abs=1e-15)

    def test_thm9_alpha_one_matches_thm3(self, rng):
        for _ in range(10):
            m1, m2 = rng.uniform(0.2, 1.0, 2)
            a = rng.uniform(0.0, 1.0)
            b = a + rng.uniform(0.3, 2.0)
            upper = max(b, a / m1, a / m2)
            f = sample_certified(ClassTag.m_convex(m1), upper, rng).spec
            g = sample_certified(ClassTag.m_convex(m2), upper, rng).spec
            r3 = B.thm3_exponent_product(f, g, m1, m2, (a, b))
            for v in Variant:
                r9 = B.thm9_alpha_m_exponent_product(f, g, 1.0, m1, 1.0, m2, (a, b), variant=v)
                assert abs(r9.rhs - r3.rhs) <= 1e-13 * abs(r3.rhs)
                assert r9.lhs == r3.lhs

    def test_thm10_counterexample_to_printed(self):
        f = F(Affine(1.0, 1.0))
        p = B.thm10_alpha_m_weighted_product(f, ONE, 1.0, 1.0, 0.5, 1.0, (0.0, 1.0), variant=PRINTED)
        d = B.thm10_alpha_m_weighted_product(f, ONE, 1.0, 1.0, 0.5, 1.0, (0.0, 1.0), variant=DERIVED)
        assert p.lhs == pytest.approx(3.0, abs=1e-12)
        assert d.rhs == pytest.approx(3.0, abs=1e-12)
        assert p.rhs == pytest.approx(44 / 15, abs=1e-12)
        assert p.violated and d.holds

    def test_thm10_symmetric_alphas_coincide(self):
        f = F(Power(1.0, 3.0))
        args = (f, f, 0.6, 0.5, 0.6, 0.5, (0.2, 1.0))
        p = B.thm10_alpha_m_weighted_product(*args, variant=PRINTED)
        d = B.thm10_alpha_m_weighted_product(*args, variant=DERIVED)
        assert p.rhs == d.rhs

    def test_thm10_constants(self):
        rep = B.thm10_alpha_m_weighted_product(ONE, ONE, 1.0, 1.0, 1.0, 1.0, (0.0, 1.0))
        assert rep.lhs == pytest.approx(2.0) and rep.rhs == pytest.approx(2.0)


class TestCorollaries:
    def test_c1_constants(self):
        assert abs(B.corollary_preset("C1", ONE, ONE, (0.0, 1.0)).slack) <= 1e-12

    def test_c2_identity(self):
        rep = B.corollary_preset("C2", X, X, (0.0, 1.0))
        assert rep.holds

    def test_c3_needs_monotone(self):
        f = F(Exponential(1.0, -1.0), 2.0)
        with pytest.raises(HypothesisError):
            B.corollary_preset("C3", f, f, (0.0, 2.0))

    def test_c3_holds(self):
        f = F(Power(1.0, 2.0), 2.0)
        rep = B.corollary_preset("C3", f, f, (0.5, 2.0))
        assert rep.holds and rep.slack > 0

    def test_c4_requires_unit_g(self):
        with pytest.raises(HypothesisError):
            B.corollary_preset("C4", X, X, (0.0, 1.0))

    def test_c5_printed_violation(self):
        rep = B.corollary_preset("C5", ONE, ONE, (0.0, 1.0), variant=PRINTED, ratio=RatioBounds(1.0, 1.0))
        assert rep.lhs == pytest.approx(2.0) and rep.rhs == 0.0
        assert rep.violation == pytest.approx(2.0)

    def test_c5_derived(self):
        rep = B.corollary_preset("C5", ONE, ONE, (0.0, 1.0), ratio=RatioBounds(1.0, 1.0))
        assert rep.lhs == pytest.approx(2.0) and rep.rhs == pytest.approx(2.0)

    def test_c7_coefficients(self):
        f = F(Affine(2.0, 1.0))
        g = F(Affine(1.0, 3.0))
        printed = B.corollary_preset("C7", f, g, (0.0, 1.0), variant=PRINTED)
        assert printed.rhs == pytest.approx((3 + 4) / 3 + (1 + 3) / 6, abs=1e-14)
        # derived form swaps the g weights: g(b)/6 + g(a)/3
        derived = B.corollary_preset("C7", f, g, (0.0, 1.0))
        assert derived.rhs == pytest.approx(3 / 3 + 1 / 6 + 4 / 6 + 3 / 3, abs=1e-14)

    @pytest.mark.parametrize("cid", ["C8", "C9"])
    def test_alpha_one_presets_coincide(self, cid):
        f = F(Power(1.0, 2.0), 2.0)
        p = B.corollary_preset(cid, f, f, (0.5, 1.0), variant=PRINTED, m1=0.5, m2=0.5)
        d = B.corollary_preset(cid, f, f, (0.5, 1.0), variant=DERIVED, m1=0.5, m2=0.5)
        assert p.rhs == pytest.approx(d.rhs, rel=1e-15)

    def test_unknown(self):
        with pytest.raises(ValueError):
            B.corollary_preset("C10", ONE, ONE, (0.0, 1.0))
