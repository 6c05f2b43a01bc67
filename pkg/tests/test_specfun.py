"""Special-function layer: recurrences, roots, hypergeometrics, linearizations."""

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dho import oracle, specfun
from dho.errors import DomainError, UnsupportedError
from dho.specfun import PolySpec, EULER_GAMMA


class TestEvalPoly:
    def test_hermite_degree0(self):
        spec = PolySpec("hermite", 0, None, "orthogonal")
        for x in (-3.0, 0.0, 1.7):
            assert specfun.eval_poly(spec, x) == 1.0

    def test_hermite_root_of_h2(self):
        spec = PolySpec("hermite", 2, None, "orthogonal")
        assert abs(specfun.eval_poly(spec, 1.0 / math.sqrt(2))) < 1e-14

    def test_laguerre_value_at_zero(self):
        # L_1^(alpha)(0) = alpha + 1, derived from the recurrence directly
        spec = PolySpec("laguerre", 1, 0.5, "orthogonal")
        assert specfun.eval_poly(spec, 0.0) == pytest.approx(1.5, rel=1e-15)

    def test_parameter_validation(self):
        with pytest.raises(DomainError):
            PolySpec("laguerre", 2, -1.0)
        with pytest.raises(DomainError):
            PolySpec("gegenbauer", 2, -0.5)
        with pytest.raises(DomainError):
            PolySpec("hermite", 2, 1.0)

    @pytest.mark.parametrize("family,param", [
        ("hermite", None), ("laguerre", 0.5), ("laguerre", 4.0),
        ("gegenbauer", 0.5), ("gegenbauer", 2.5)])
    def test_orthonormality_under_matching_gauss_rule(self, family, param):
        rule_family = "jacobi" if family == "gegenbauer" else family
        params = ((param - 0.5, param - 0.5) if family == "gegenbauer"
                  else ((param,) if param is not None else ()))
        rule = oracle.gauss_rule(rule_family, 40, *params)
        for n, m in ((0, 0), (3, 3), (7, 2), (30, 30), (30, 28)):
            pn = specfun.eval_poly(PolySpec(family, n, param), rule.nodes)
            pm = specfun.eval_poly(PolySpec(family, m, param), rule.nodes)
            val = float(np.sum(rule.weights * pn * pm))
            assert val == pytest.approx(1.0 if n == m else 0.0, abs=1e-11)

    def test_scaled_evaluation_matches_plain(self):
        spec = PolySpec("laguerre", 12, 1.5)
        x = np.linspace(0.1, 40.0, 17)
        mant, logs = specfun.eval_poly_scaled(spec, x)
        assert np.allclose(mant * np.exp(logs), specfun.eval_poly(spec, x),
                           rtol=1e-13)

    def test_high_degree_large_parameter_is_finite(self):
        spec = PolySpec("laguerre", 200, 1000.0)
        mant, logs = specfun.eval_poly_scaled(spec, np.array([800.0, 1500.0]))
        assert np.all(np.isfinite(mant)) and np.all(np.isfinite(logs))


class TestRoots:
    def test_hermite_n1(self):
        roots = specfun.poly_roots(PolySpec("hermite", 1))
        assert roots.tolist() == [0.0]

    def test_hermite_n2(self):
        roots = specfun.poly_roots(PolySpec("hermite", 2))
        assert roots == pytest.approx([-1 / math.sqrt(2), 1 / math.sqrt(2)], rel=1e-14)

    def test_laguerre_n2(self):
        # x^2 - 4x + 2 = 0 from the recurrence
        roots = specfun.poly_roots(PolySpec("laguerre", 2, 0.0))
        assert roots == pytest.approx([2 - math.sqrt(2), 2 + math.sqrt(2)], rel=1e-13)

    def test_residuals_small(self):
        for spec in (PolySpec("hermite", 14), PolySpec("laguerre", 9, 2.2),
                     PolySpec("gegenbauer", 11, 1.5)):
            roots = specfun.poly_roots(spec)
            assert len(roots) == spec.degree
            assert np.all(np.diff(roots) > 0)
            vals = specfun.eval_poly(spec, roots)
            scale = np.max(np.abs(specfun.eval_poly(
                spec, np.linspace(roots[0], roots[-1], 50))))
            assert np.max(np.abs(vals)) <= 1e-12 * scale


class TestGammaFamily:
    def test_digamma_at_one(self):
        assert specfun.digamma(1.0) == pytest.approx(-EULER_GAMMA, rel=1e-13)

    def test_ln_gamma_half(self):
        assert specfun.ln_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)

    def test_poles_raise(self):
        for f in (specfun.ln_gamma, specfun.digamma):
            with pytest.raises(DomainError):
                f(0.0)
            with pytest.raises(DomainError):
                f(-3.0)

    def test_against_mpmath(self):
        for x in (0.3, 1.0, 7.5, 123.4, 4001.0):
            assert specfun.ln_gamma(x) == pytest.approx(float(mp.loggamma(x)), rel=1e-13)
            assert specfun.digamma(x) == pytest.approx(float(mp.digamma(x)), rel=1e-13)

    @given(st.floats(-10, 10).filter(lambda a: abs(a) > 1e-6),
           st.integers(0, 12))
    @settings(max_examples=40, deadline=None)
    def test_pochhammer_shift(self, a, j):
        # (a)_{j+1} = (a)_j (a + j)
        assert specfun.pochhammer(a, j + 1) == pytest.approx(
            specfun.pochhammer(a, j) * (a + j), rel=1e-12, abs=1e-300)

    def test_pochhammer_empty(self):
        assert specfun.pochhammer(-2.7, 0) == 1.0


class TestHyp3F2:
    def test_a1_zero_is_exactly_one(self):
        assert specfun.hyp_3F2_unit(0.0, -0.5, 1.5, 1.5, 1.0) == 1.0

    def test_a2_zero_kills_sum(self):
        for nr in (1, 5, 9):
            assert specfun.hyp_3F2_unit(-nr, 0.0, 1.0, 2.3, 1.0) == 1.0

    def test_two_term_example(self):
        # moment combination for n_r=1, l=0, D=3, k=2
        val = specfun.hyp_3F2_unit(-1.0, -1.0, 2.0, 1.5, 1.0)
        assert val == pytest.approx(7.0 / 3.0, rel=1e-15)

    def test_nonterminating_rejected(self):
        with pytest.raises(UnsupportedError):
            specfun.hyp_3F2_unit(0.5, 0.3, 1.0, 2.0, 2.0)


class TestHypPFQ:
    def test_unit_at_zero(self):
        assert specfun.hyp_pFq([3.0], [0.5], 0.0) == 1.0
        assert specfun.hyp_pFq([1.0, 1.0], [1.5, 2.0], 0.0) == 1.0

    def test_1f1_against_mpmath(self):
        for k in (1, 3, 8):
            for z in (-0.5, -5.0, -50.0, 2.0):
                ref = float(mp.hyp1f1(k, 0.5, z))
                assert specfun.hyp_pFq([k], [0.5], z) == pytest.approx(ref, rel=1e-11)

    def test_2f2_against_mpmath(self):
        for z in (-0.25, -9.0, -40.0, -120.0):
            ref = float(mp.hyper([1, 1], [1.5, 2], z))
            assert specfun.hyp_pFq([1.0, 1.0], [1.5, 2.0], z) == pytest.approx(ref, rel=1e-11)


class TestLauricella:
    def test_trivial_one(self):
        for q in (1, 2, 3):
            assert specfun.lauricella_FA_finite(q, 0, 0) == 1.0
            assert specfun.lauricella_FA_finite(q, 1, 1) == 1.0

    def test_parity_mismatch(self):
        with pytest.raises(DomainError):
            specfun.lauricella_FA_finite(2, 0, 3)

    def test_frozen_value_n2_q2(self):
        # two-fold nested sum done by hand: each index in {0, 1}
        assert specfun.lauricella_FA_finite(2, 0, 2) == pytest.approx(2.5625, rel=1e-13)


def _reconstruction_points(family):
    if family == "gegenbauer":
        return np.linspace(-0.95, 0.95, 20)
    if family == "laguerre":
        return np.linspace(0.05, 18.0, 20)
    return np.linspace(-4.0, 4.0, 20)


class TestLinearizations:
    @pytest.mark.parametrize("n,q", [(0, 2), (1, 1), (1, 2), (2, 2), (3, 2), (2, 3), (4, 1)])
    def test_hermite_power_reconstruction(self, n, q):
        exp_ = specfun.hermite_power_linearize(n, q)
        xs = _reconstruction_points("hermite")
        target = specfun.eval_poly(PolySpec("hermite", n, None, "orthogonal"), xs) ** (2 * q)
        got = exp_(xs)
        assert np.allclose(got, target, rtol=1e-9, atol=1e-9 * np.max(np.abs(target)))

    def test_hermite_power_truncation_degree(self):
        exp_ = specfun.hermite_power_linearize(3, 2)
        assert max(idx for idx, _ in exp_.coefficients) == 2 * 2 * 3

    @pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (4, 3)])
    def test_hermite_power_gauss_integral(self, n, q):
        # int |H_n(y)|^{2q} e^{-q y^2} dy: only the j = 0 expansion term survives
        exp_ = specfun.hermite_power_linearize(n, q)
        rule = oracle.gauss_rule("hermite", q * n + 2)
        direct = float(np.sum(rule.weights * specfun.eval_poly(
            PolySpec("hermite", n, None, "orthogonal"),
            rule.nodes / math.sqrt(q)) ** (2 * q))) / math.sqrt(q)
        const = dict(exp_.coefficients)[0]
        assert direct == pytest.approx(const * math.sqrt(math.pi / q), rel=1e-11)

    @pytest.mark.parametrize("n,alpha", [(0, 0.7), (1, 0.5), (3, 2.0), (5, 0.0)])
    def test_laguerre_square_reconstruction(self, n, alpha):
        exp_ = specfun.laguerre_square_linearize(n, alpha)
        xs = _reconstruction_points("laguerre")
        target = specfun.eval_poly(PolySpec("laguerre", n, alpha, "orthogonal"), xs) ** 2
        assert np.allclose(exp_(xs), target, rtol=1e-9,
                           atol=1e-9 * np.max(np.abs(target)))

    def test_laguerre_square_at_zero(self):
        n, alpha = 3, 1.2
        exp_ = specfun.laguerre_square_linearize(n, alpha)
        target = math.exp(specfun.ln_gamma(alpha + 1 + n)
                          - specfun.ln_gamma(n + 1.0) - specfun.ln_gamma(alpha + 1.0)) ** 2
        assert float(exp_(0.0)) == pytest.approx(target, rel=1e-11)

    def test_laguerre_product_integral_weight_case(self):
        alpha = 1.7
        val = specfun.laguerre_product_integral(alpha, alpha, alpha, 0, 0)
        assert val == pytest.approx(math.gamma(alpha + 1.0), rel=1e-13)

    @pytest.mark.parametrize("s,alpha,beta,n,m", [
        (1.5, 0.5, 0.5, 2, 3), (2.0, 1.0, 0.0, 1, 4), (0.7, 0.7, 1.3, 3, 3)])
    def test_laguerre_product_integral_vs_quadrature(self, s, alpha, beta, n, m):
        rule = oracle.gauss_rule("laguerre", n + m + int(math.ceil(s)) + 4, s)
        pn = specfun.eval_poly(PolySpec("laguerre", n, alpha, "orthogonal"), rule.nodes)
        pm = specfun.eval_poly(PolySpec("laguerre", m, beta, "orthogonal"), rule.nodes)
        ref = float(np.sum(rule.weights * pn * pm))
        assert specfun.laguerre_product_integral(s, alpha, beta, n, m) == pytest.approx(
            ref, rel=1e-11, abs=1e-13)

    @pytest.mark.parametrize("n,lam,mu", [(0, 0.5, 0), (1, 0.5, 1), (2, 1.5, 1),
                                          (3, 1.0, 2), (4, 0.5, 2)])
    def test_gegenbauer_square_reconstruction(self, n, lam, mu):
        exp_ = specfun.gegenbauer_square_linearize(n, lam, mu)
        xs = np.concatenate([_reconstruction_points("gegenbauer"), [0.0, 0.7, -0.7]])
        target = specfun.eval_poly(PolySpec("gegenbauer", n, lam), xs) ** 2
        assert np.allclose(exp_(xs), target, rtol=1e-9,
                           atol=1e-9 * np.max(np.abs(target)))

    def test_gegenbauer_sum_b2_is_quartic_integral(self):
        # sum_k b^2 equals the quartic one-factor angular integral
        n, lam, mu = 2, 1.5, 1
        exp_ = specfun.gegenbauer_square_linearize(n, lam, mu)
        coeff_sq_sum = math.fsum(c * c for _, c in exp_.coefficients)
        a = lam + mu - 0.5
        rule = oracle.gauss_rule("jacobi", 2 * n + 4, a, a)
        quart = float(np.sum(rule.weights * specfun.eval_poly(
            PolySpec("gegenbauer", n, lam), rule.nodes) ** 4))
        assert coeff_sq_sum == pytest.approx(quart, rel=1e-11)


class TestBesselAnd3j:
    def test_half_order_closed_form(self):
        xs = np.linspace(0.3, 200.0, 41)
        ref = np.sqrt(2.0 / (math.pi * xs)) * np.sin(xs)
        assert np.allclose(specfun.bessel_J(0.5, xs), ref, rtol=1e-10, atol=1e-12)
        assert abs(specfun.bessel_J(0.5, math.pi)) < 1e-10

    def test_bessel_against_mpmath(self):
        for a in (0.0, 0.5, 2.0, 5.5):
            for x in (0.1, 1.0, 20.0, 200.0):
                assert specfun.bessel_J(a, x) == pytest.approx(
                    float(mp.besselj(a, x)), rel=1e-10, abs=1e-13)

    def test_3j_trivial(self):
        assert specfun.wigner_3j(0, 0, 0, 0, 0, 0) == 1.0

    def test_3j_reference(self):
        assert specfun.wigner_3j(1, 1, 2, 0, 0, 0) == pytest.approx(
            math.sqrt(2.0 / 15.0), rel=1e-14)

    def test_3j_selection_rules_return_zero(self):
        assert specfun.wigner_3j(1, 1, 3, 0, 0, 0) == 0.0
        assert specfun.wigner_3j(1, 1, 2, 1, 0, 0) == 0.0

    @given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 10),
           st.integers(-5, 5), st.integers(-5, 5))
    @settings(max_examples=60, deadline=None)
    def test_3j_column_permutation_phase(self, j1, j2, j3, m1, m2):
        m3 = -m1 - m2
        base = specfun.wigner_3j(j1, j2, j3, m1, m2, m3)
        cyc = specfun.wigner_3j(j2, j3, j1, m2, m3, m1)
        swap = specfun.wigner_3j(j2, j1, j3, m2, m1, m3)
        phase = (-1.0) ** (j1 + j2 + j3)
        assert cyc == pytest.approx(base, abs=1e-12)
        assert swap == pytest.approx(phase * base, abs=1e-12)
