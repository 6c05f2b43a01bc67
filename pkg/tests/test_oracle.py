"""Quadrature engine: rule exactness, adaptive integrals, norms, entropies."""

import math

import numpy as np
import pytest
from scipy.special import gammaln

from dho import oracle, specfun
from dho.errors import DomainError
from dho.specfun import PolySpec


def _symmetric_jacobi_moment(a: float, k: int) -> float:
    # int_-1^1 x^k (1-x^2)^a dx, exact for even k
    if k % 2:
        return 0.0
    m = k // 2
    return math.exp(gammaln(m + 0.5) + gammaln(a + 1.0) - gammaln(m + a + 1.5))


class TestGaussRules:
    def test_hermite_order_1(self):
        r = oracle.gauss_rule("hermite", 1)
        assert r.nodes.tolist() == [0.0]
        assert r.weights[0] == pytest.approx(math.sqrt(math.pi), rel=1e-15)

    def test_laguerre0_order_1(self):
        r = oracle.gauss_rule("laguerre", 1, 0.0)
        assert r.nodes[0] == pytest.approx(1.0, rel=1e-14)
        assert r.weights[0] == pytest.approx(1.0, rel=1e-14)

    def test_legendre_order_2(self):
        r = oracle.gauss_rule("jacobi", 2, 0.0, 0.0)
        assert r.nodes == pytest.approx([-1 / math.sqrt(3), 1 / math.sqrt(3)], rel=1e-14)
        assert r.weights == pytest.approx([1.0, 1.0], rel=1e-14)

    @pytest.mark.parametrize("order", [4, 13, 33])
    def test_hermite_exactness(self, order):
        r = oracle.gauss_rule("hermite", order)
        for k in range(0, 2 * order - 1):
            got = float(np.sum(r.weights * r.nodes ** k))
            exact = math.gamma((k + 1) / 2.0) if k % 2 == 0 else 0.0
            scale = float(np.sum(r.weights * np.abs(r.nodes) ** k))
            assert abs(got - exact) <= 1e-12 * max(scale, 1e-300)

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 3.7])
    def test_laguerre_exactness(self, alpha):
        order = 21
        r = oracle.gauss_rule("laguerre", order, alpha)
        for k in range(0, 2 * order - 1):
            got = float(np.sum(r.weights * r.nodes ** k))
            exact = math.exp(gammaln(k + 1.0 + alpha))
            assert got == pytest.approx(exact, rel=1e-12)

    @pytest.mark.parametrize("a", [-0.5, 0.0, 1.5])
    def test_symmetric_jacobi_exactness(self, a):
        order = 17
        r = oracle.gauss_rule("jacobi", order, a, a)
        for k in range(0, 2 * order - 1):
            got = float(np.sum(r.weights * r.nodes ** k))
            exact = _symmetric_jacobi_moment(a, k)
            scale = float(np.sum(r.weights * np.abs(r.nodes) ** k))
            assert abs(got - exact) <= 1e-12 * max(scale, 1e-300)

    def test_nodes_increasing_weights_positive(self):
        for fam, params in (("hermite", ()), ("laguerre", (2.0,)), ("jacobi", (0.3, 1.1))):
            r = oracle.gauss_rule(fam, 25, *params)
            assert np.all(np.diff(r.nodes) > 0)
            assert np.all(r.weights > 0)

    def test_rule_cache_returns_same_object(self):
        a = oracle.gauss_rule("laguerre", 9, 1.0)
        b = oracle.gauss_rule("laguerre", 9, 1.0)
        assert a is b

    def test_extreme_parameter_log_weights(self):
        r = oracle.gauss_rule("laguerre", 30, 5000.0)
        m = float(r.log_weights.max())
        mass = m + math.log(float(np.sum(np.exp(r.log_weights - m))))
        assert mass == pytest.approx(float(gammaln(5001.0)), rel=1e-10)

    def test_parameter_validation(self):
        with pytest.raises(DomainError):
            oracle.gauss_rule("laguerre", 5, -1.5)
        with pytest.raises(DomainError):
            oracle.gauss_rule("hermite", 0)


class TestAdaptive:
    def test_exponential(self):
        est = oracle.integrate_adaptive(lambda x: math.exp(-x), 0.0, math.inf)
        assert est.value == pytest.approx(1.0, rel=1e-12)

    def test_gaussian_log_moment(self):
        f = lambda x: math.exp(-x * x) * (-x * x)
        est = oracle.integrate_adaptive(f, -math.inf, math.inf)
        assert est.value == pytest.approx(-math.sqrt(math.pi) / 2.0, rel=1e-11)

    def test_entropy_integrand_self_convergence(self):
        spec = PolySpec("laguerre", 2, 0.5)
        roots = specfun.poly_roots(spec)

        def f(x):
            y = float(specfun.eval_poly(spec, np.array([x]))[0])
            y2 = y * y
            if y2 == 0.0 or x <= 0.0:
                return 0.0
            return x ** 0.5 * math.exp(-x) * y2 * math.log(y2)

        coarse = oracle.integrate_adaptive(f, 0.0, math.inf, roots, tol=1e-9)
        fine = oracle.integrate_adaptive(f, 0.0, math.inf, roots, tol=1e-12)
        assert math.isfinite(coarse.value)
        assert abs(coarse.value - fine.value) <= max(1e-9 * abs(fine.value),
                                                     coarse.abs_error_estimate * 10)

    def test_halving_tol_consistency(self):
        f = lambda x: math.exp(-x) * math.log(1.0 + x)
        a = oracle.integrate_adaptive(f, 0.0, math.inf, tol=1e-8)
        b = oracle.integrate_adaptive(f, 0.0, math.inf, tol=1e-12)
        assert abs(a.value - b.value) <= max(a.abs_error_estimate, 1e-10)

    def test_error_estimate_nonnegative(self):
        est = oracle.integrate_adaptive(lambda x: x * x, 0.0, 1.0)
        assert est.abs_error_estimate >= 0.0
        assert est.subdivisions >= 1


class TestWeightedNorm:
    def test_q1_is_normalization(self):
        for nr in (0, 1, 4, 9):
            for l in (0, 2):
                for D in (2, 3, 6):
                    assert oracle.weighted_Lq_norm(nr, l, D, 1.0) == pytest.approx(
                        1.0, rel=1e-12)

    def test_ground_q2_d2(self):
        # constant polynomial: int_0^inf e^{-2x} dx = 1/2
        assert oracle.weighted_Lq_norm(0, 0, 2, 2.0) == pytest.approx(0.5, rel=1e-13)

    def test_gauss_vs_adaptive(self):
        for (nr, l, D, q) in ((1, 0, 3, 2.0), (3, 1, 5, 2.0), (2, 2, 4, 3.0)):
            exact = oracle.weighted_Lq_norm(nr, l, D, q)
            # non-integer path forced through a nearby call with the adaptive engine
            adaptive = oracle.weighted_Lq_norm(nr, l, D, q + 1e-12, tol=1e-12)
            assert exact == pytest.approx(adaptive, rel=1e-9)

    def test_parameter_guards(self):
        # the integral-convergence condition itself is unviolable for D >= 2,
        # l >= 0, q > 0 (D/2 + l q - 1 > -1 always); only bad q/D can raise
        with pytest.raises(DomainError):
            oracle.weighted_Lq_norm(1, 0, 3, 0.0)
        with pytest.raises(DomainError):
            oracle.weighted_Lq_norm(1, 0, 1, 2.0)


class TestPolynomialEntropy:
    def test_laguerre_degree0(self):
        for alpha in (0.5, 2.0, 7.0):
            got = oracle.polynomial_entropy(PolySpec("laguerre", 0, alpha))
            assert got == pytest.approx(float(gammaln(alpha + 1.0)), rel=1e-11, abs=1e-11)

    def test_gegenbauer_degree0(self):
        for lam in (0.5, 1.5, 4.0):
            got = oracle.polynomial_entropy(PolySpec("gegenbauer", 0, lam))
            exact = (0.5 * math.log(math.pi) + gammaln(lam + 0.5) - gammaln(lam + 1.0))
            assert got == pytest.approx(float(exact), rel=1e-11, abs=1e-11)

    def test_orthonormal_required(self):
        with pytest.raises(DomainError):
            oracle.polynomial_entropy(PolySpec("laguerre", 2, 0.5, "orthogonal"))

    def test_default_tolerance_env_override(self, monkeypatch):
        monkeypatch.setenv("HO_ORACLE_TOL", "1e-6")
        assert oracle.default_tolerance() == 1e-6
        monkeypatch.setenv("HO_ORACLE_TOL", "-1")
        with pytest.raises(DomainError):
            oracle.default_tolerance()
        monkeypatch.setenv("HO_ORACLE_TOL", "zzz")
        with pytest.raises(DomainError):
            oracle.default_tolerance()


class TestConcurrency:
    def test_rule_cache_thread_safety(self):
        import concurrent.futures as cf

        import dho.oracle as orc

        def work(i):
            rule = orc.gauss_rule("laguerre", 10 + (i % 5), 0.5 + (i % 3))
            val = orc.weighted_Lq_norm(2 + (i % 3), i % 2, 3, 2.0)
            ent = orc.polynomial_entropy(
                __import__("dho.specfun", fromlist=["PolySpec"]).PolySpec(
                    "laguerre", 3 + (i % 2), 1.0))
            return (float(rule.weights.sum()), val, ent)

        with cf.ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(work, range(32)))
        # identical inputs give identical outputs regardless of interleaving
        by_key = {}
        for i, res in enumerate(results):
            key = (10 + (i % 5), 0.5 + (i % 3), 2 + (i % 3), i % 2, 3 + (i % 2))
            by_key.setdefault(key, res)
            assert by_key[key] == res
