"""Radial expectation values: closed forms, identities, quadrature agreement."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dho import moments
from dho.errors import DomainError
from dho.states import HyperState, OscillatorSpec, Space


def hyper(omega, D, nr, l, m=None):
    if D == 2:
        return HyperState(OscillatorSpec(omega, D), nr, (l,))
    mu = [l] + [0] * (D - 2)
    if m is not None:
        mu = [l] + [m] * (D - 2)
    return HyperState(OscillatorSpec(omega, D), nr, tuple(mu))


class TestClosedForm:
    def test_k0_is_one(self):
        for st_ in (hyper(1.0, 3, 0, 0), hyper(2.0, 6, 4, 3), hyper(0.5, 2, 2, 1)):
            assert moments.radial_moment(st_, 0.0) == pytest.approx(1.0, rel=1e-14)

    def test_r2_reference(self):
        st_ = hyper(1.0, 3, 1, 2)
        assert moments.radial_moment(st_, 2.0) == pytest.approx(5.5, rel=1e-14)

    def test_rminus2_reference(self):
        # omega / (L + 1/2) with L = l + (D-3)/2
        for nr in (0, 2, 5):
            st_ = hyper(2.0, 3, nr, 1)
            assert moments.radial_moment(st_, -2.0) == pytest.approx(4.0 / 3.0, rel=1e-13)

    def test_r4_ground(self):
        st_ = hyper(1.0, 3, 0, 0)
        assert moments.radial_moment(st_, 4.0) == pytest.approx(3.75, rel=1e-14)

    def test_existence_condition(self):
        with pytest.raises(DomainError):
            moments.radial_moment(hyper(1.0, 3, 1, 0), -3.0)
        with pytest.raises(DomainError):
            moments.radial_moment(hyper(1.0, 2, 0, 0), -2.0)

    def test_momentum_space_scaling(self):
        st_ = hyper(2.0, 5, 2, 1)
        for k in (-2.0, 1.0, 2.0, 3.5):
            assert moments.radial_moment(st_, k, Space.MOMENTUM) == pytest.approx(
                2.0 ** k * moments.radial_moment(st_, k), rel=1e-14)

    @given(st.integers(0, 8), st.integers(0, 4), st.sampled_from([2, 3, 6]),
           st.sampled_from([-1.0, 1.0, 2.0, 3.0]), st.floats(0.2, 4.0))
    @settings(max_examples=50, deadline=None)
    def test_omega_scaling_property(self, nr, l, D, k, omega):
        if not k > -D - 2 * l:
            return
        ref = moments.radial_moment(hyper(1.0, D, nr, l), k)
        val = moments.radial_moment(hyper(omega, D, nr, l), k)
        assert val == pytest.approx(omega ** (-k / 2.0) * ref, rel=1e-12)

    def test_dual_form_agreement(self):
        for (nr, l, D, k) in ((10, 0, 3, 1.0), (10, 5, 12, 3.0), (8, 2, 6, -1.0)):
            a = moments.moment_3f2_form(hyper(1.0, D, nr, l), k)
            b = moments.radial_moment(hyper(1.0, D, nr, l), k)
            assert a == pytest.approx(b, rel=1e-12)


class TestOracleAgreement:
    @pytest.mark.parametrize("k", [-2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0, 6.0])
    def test_gauss_oracle(self, k):
        for (nr, l, D, om) in ((0, 0, 3, 1.0), (5, 2, 6, 0.5), (10, 5, 12, 2.0),
                               (3, 1, 2, 1.0)):
            if not k > -D - 2 * l:
                continue
            st_ = hyper(om, D, nr, l)
            assert moments.oracle_radial_moment(st_, k) == pytest.approx(
                moments.radial_moment(st_, k), rel=1e-10)

    def test_adaptive_oracle_spot(self):
        st_ = hyper(1.0, 3, 2, 1)
        for k in (-1.0, 2.0):
            est = moments.oracle_radial_moment_adaptive(st_, k, tol=1e-11)
            assert est.value == pytest.approx(moments.radial_moment(st_, k), rel=1e-10)


class TestRecurrence:
    def test_from_initial_conditions(self):
        st_ = hyper(1.0, 3, 2, 1)
        m0 = 1.0
        mm2 = moments.radial_moment(st_, -2.0)
        m2 = moments.recurrence_step(st_, 0.0, m0, mm2)
        assert m2 == pytest.approx((2 * st_.n + 3) / 2.0, rel=1e-13)

    def test_r4_ground_value(self):
        st_ = hyper(1.0, 3, 0, 0)
        m2 = moments.radial_moment(st_, 2.0)
        m4 = moments.recurrence_step(st_, 2.0, m2, 1.0)
        assert m4 == pytest.approx(3.75, rel=1e-13)

    def test_matches_closed_form_on_grid(self):
        for D in (2, 3, 6):
            for l in (0, 2, 4):
                for nr in (0, 3, 8):
                    st_ = hyper(1.0, D, nr, l)
                    for k in (0.0, 2.0, 4.0):
                        if not k - 2.0 > -D - 2 * l:
                            continue
                        got = moments.recurrence_step(
                            st_, k, moments.radial_moment(st_, k),
                            moments.radial_moment(st_, k - 2.0))
                        assert got == pytest.approx(
                            moments.radial_moment(st_, k + 2.0), rel=1e-11)

    def test_k_minus_two_rejected(self):
        with pytest.raises(DomainError):
            moments.recurrence_step(hyper(1.0, 3, 0, 0), -2.0, 1.0, 1.0)


class TestReflection:
    def test_closed_loop(self):
        for (nr, l, D, om, k) in ((2, 1, 5, 1.0, 1.0), (3, 0, 5, 2.0, 1.0),
                                  (1, 2, 6, 0.7, 2.0), (4, 2, 4, 1.0, 1.5)):
            st_ = hyper(om, D, nr, l)
            assert moments.reflection_moment(st_, k) == pytest.approx(
                moments.radial_moment(st_, -k - 2.0), rel=1e-11)

    def test_rminus3_relation(self):
        for nr in range(0, 5):
            st_ = hyper(1.0, 5, nr, 1)
            assert moments.reflection_moment_rminus3(st_) == pytest.approx(
                moments.radial_moment(st_, -3.0), rel=1e-11)

    def test_gamma_pole_guard(self):
        with pytest.raises(DomainError):
            moments.reflection_moment(hyper(1.0, 3, 0, 0), 2.0)


class TestHeisenberg:
    def test_k0(self):
        assert moments.heisenberg_product(hyper(1.0, 3, 2, 1), 0.0) == 1.0

    def test_k2_closed(self):
        for (nr, l, D) in ((0, 0, 3), (2, 1, 3), (3, 4, 6), (1, 0, 2)):
            st_ = hyper(1.3, D, nr, l)
            assert moments.heisenberg_product(st_, 2.0) == pytest.approx(
                (2 * nr + l + D / 2.0) ** 2, rel=1e-12)

    def test_ground_saturates_central_bound(self):
        for D in (2, 3, 4, 6):
            st_ = hyper(1.0, D, 0, 0)
            assert moments.heisenberg_product(st_, 2.0) == pytest.approx(
                (D / 2.0) ** 2, rel=1e-13)

    def test_omega_invariance(self):
        vals = [moments.heisenberg_product(hyper(om, 4, 2, 2), 3.0)
                for om in (0.5, 1.0, 2.0)]
        assert vals[0] == pytest.approx(vals[1], rel=1e-12)
        assert vals[2] == pytest.approx(vals[1], rel=1e-12)

    def test_bound_hierarchy(self):
        for (nr, l, D) in ((1, 0, 3), (0, 2, 3), (2, 3, 6)):
            st_ = hyper(1.0, D, nr, l)
            prod = moments.heisenberg_product(st_, 2.0)
            assert prod >= D * D / 4.0 - 1e-12
            assert prod >= (l + D / 2.0) ** 2 - 1e-12
            if nr == 0:
                assert prod == pytest.approx((l + D / 2.0) ** 2, rel=1e-13)
