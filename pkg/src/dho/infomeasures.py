"""Fisher information, Shannon / Renyi entropies, and disequilibrium.

Cartesian Shannon and integer-order Renyi entropies have fully closed forms
(Hermite roots + hypergeometric root sums; Hermite-power linearization).  The
hyperspherical decompositions are exact identities whose Laguerre/Gegenbauer
entropy kernels are supplied numerically (no closed forms exist), so assembled
hyperspherical Shannon values carry the `oracle` engine tag.  Every closed
route has an independent density-integral oracle next to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from . import oracle, specfun, states
from .errors import ConsistencyError, DomainError, UnsupportedError
from .moments import oracle_radial_moment, radial_moment
from .specfun import EULER_GAMMA, PolySpec
from .states import CartesianState, HyperState, Space

ENGINE_CLOSED = "closed"
ENGINE_ORACLE = "oracle"


@dataclass(frozen=True)
class RenyiOrder:
    """Renyi order q > 0, q != 1; conjugate defined for q > 1/2."""

    q: float

    def __post_init__(self):
        if not self.q > 0 or self.q == 1.0:
            raise DomainError("Renyi order requires q > 0, q != 1")

    @property
    def conjugate(self) -> float:
        if not self.q > 0.5:
            raise DomainError("conjugate order needs q > 1/2")
        return self.q / (2.0 * self.q - 1.0)

    def beta(self, D: float) -> float:
        return (self.q - 1.0) * (1.0 - D / 2.0)


@dataclass(frozen=True)
class MeasureValue:
    value: float
    space: Space
    engine: str
    error_estimate: float | None = None


def _width(omega: float, space: Space) -> float:
    return omega if space is Space.POSITION else 1.0 / omega


# ---------------------------------------------------------------------------
# Fisher information


def fisher(state: HyperState, space: Space = Space.POSITION,
           engine: str = ENGINE_CLOSED) -> MeasureValue:
    """4 (2 n_r + l - |m| + D/2) omega^(+-1); cross-checked against the moment
    combination 4<p^2> - 2|m|(2l + D - 2)<r^-2>."""
    D = state.spec.dim
    w = _width(state.spec.omega, space)
    if engine == ENGINE_CLOSED:
        value = 4.0 * (2 * state.n_r + state.l - abs(state.m) + D / 2.0) * w
        via_moments = _fisher_from_moments(state, space, oracle_engine=False)
        if abs(value - via_moments) > 1e-12 * max(1.0, abs(value)):
            raise ConsistencyError(
                f"fisher closed form vs moment combination: {value} vs {via_moments}")
        return MeasureValue(value, space, ENGINE_CLOSED)
    if engine == ENGINE_ORACLE:
        return MeasureValue(_fisher_from_moments(state, space, oracle_engine=True),
                            space, ENGINE_ORACLE, error_estimate=1e-12)
    raise DomainError(f"unknown engine {engine!r}")


def _fisher_from_moments(state: HyperState, space: Space, oracle_engine: bool) -> float:
    D, l, m = state.spec.dim, state.l, abs(state.m)
    mom = oracle_radial_moment if oracle_engine else radial_moment
    other = Space.MOMENTUM if space is Space.POSITION else Space.POSITION
    total = 4.0 * mom(state, 2.0, other)
    if m != 0:  # the |m| = 0 term vanishes before <r^-2> existence matters
        total -= 2.0 * m * (2 * l + D - 2) * mom(state, -2.0, space)
    return total


# ---------------------------------------------------------------------------
# Hermite entropy (1-D building block of the Cartesian Shannon form)


def _log_potential_reduced(n: int, x: float) -> float:
    """V_n(x) / (2^n n! sqrt(pi)): the Hermite logarithmic potential with its
    overall factorial scale removed."""
    s = math.fsum(
        specfun.binomial(n, k) * (-2.0) ** k / k * specfun.hyp_pFq([k], [0.5], -x * x)
        for k in range(1, n + 1))
    f22 = specfun.hyp_pFq([1.0, 1.0], [1.5, 2.0], -x * x)
    return math.log(2.0) + 0.5 * EULER_GAMMA - x * x * f22 + 0.5 * s


@lru_cache(maxsize=None)
def hermite_entropy_reduced(n: int) -> float:
    """E(H_n) / (2^n n! sqrt(pi)); full-line integral convention."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if n == 0:
        return 0.0
    roots = specfun.poly_roots(PolySpec("hermite", n, None, "orthogonal"))
    return 2.0 * n * math.log(2.0) - 2.0 * math.fsum(
        _log_potential_reduced(n, float(x)) for x in roots)


def hermite_entropy(n: int) -> float:
    """int_R H_n(x)^2 ln H_n(x)^2 e^(-x^2) dx in closed form (root sums)."""
    return hermite_entropy_reduced(n) * math.exp(
        n * math.log(2.0) + gammaln(n + 1.0) + 0.5 * math.log(math.pi))


def hermite_entropy_oracle(n: int, tol: float | None = None) -> oracle.IntegralEstimate:
    spec = PolySpec("hermite", n, None, "orthogonal")
    roots = specfun.poly_roots(spec) if n > 0 else np.array([])

    def f(x):
        h = float(specfun._eval_orthogonal("hermite", n, None, np.array([x]))[0])
        h2 = h * h
        if h2 <= 0.0:
            return 0.0
        return math.exp(-x * x) * h2 * math.log(h2)

    return oracle.integrate_adaptive(f, -math.inf, math.inf,
                                     singular_points=roots, tol=tol)


# ---------------------------------------------------------------------------
# Shannon entropy, Cartesian route


@lru_cache(maxsize=None)
def _axis_root_sums(n: int) -> float:
    """Per-axis root-sum block of the Cartesian Shannon constant."""
    if n == 0:
        return 0.0
    roots = [float(x) for x in specfun.poly_roots(PolySpec("hermite", n, None, "orthogonal"))]
    s22 = math.fsum(x * x * specfun.hyp_pFq([1.0, 1.0], [1.5, 2.0], -x * x)
                    for x in roots)
    s11 = math.fsum(
        specfun.binomial(n, k) * (-2.0) ** k / k
        * math.fsum(specfun.hyp_pFq([k], [0.5], -x * x) for x in roots)
        for k in range(1, n + 1))
    return -2.0 * s22 + s11


def shannon_axis_constant(n: int) -> float:
    """A-contribution of one axis with degree n."""
    return (n * math.log(2.0 * math.e ** (1.0 + EULER_GAMMA)) + gammaln(n + 1.0)
            + _axis_root_sums(n))


def shannon_constant(state: CartesianState) -> float:
    """A(D; {n_i}; roots): the omega-free part of the Cartesian Shannon entropy."""
    return math.fsum(shannon_axis_constant(n) for n in state.n)


@lru_cache(maxsize=None)
def _axis_shannon_std(n: int, tol: float) -> float:
    """Oracle entropy of the unit-width 1-D density for degree n."""
    spec = PolySpec("hermite", n, None, "orthonormal")
    roots = specfun.poly_roots(spec) if n > 0 else np.array([])

    def f(t):
        m, s = specfun.eval_poly_scaled(spec, np.array([t]))
        m0, s0 = float(m[0]), float(s[0])
        if m0 == 0.0:
            return 0.0
        lg = -t * t + 2.0 * (math.log(abs(m0)) + s0)
        return -math.exp(lg) * lg

    est = oracle.integrate_adaptive(f, -math.inf, math.inf,
                                    singular_points=roots, tol=tol)
    return est.value


def shannon_cartesian(state: CartesianState, space: Space = Space.POSITION,
                      engine: str = ENGINE_CLOSED,
                      tol: float | None = None) -> MeasureValue:
    """Shannon entropy of a Cartesian state in either space."""
    D, omega = state.spec.dim, state.spec.omega
    sign = -1.0 if space is Space.POSITION else 1.0
    if engine == ENGINE_CLOSED:
        value = (shannon_constant(state)
                 + (D / 2.0) * (1.0 + math.log(math.pi) + sign * math.log(omega)))
        return MeasureValue(value, space, ENGINE_CLOSED)
    if engine == ENGINE_ORACLE:
        if tol is None:
            tol = oracle.default_tolerance()
        w = _width(omega, space)
        value = math.fsum(_axis_shannon_std(n, tol) - 0.5 * math.log(w)
                          for n in state.n)
        return MeasureValue(value, space, ENGINE_ORACLE, error_estimate=tol * D)
    raise DomainError(f"unknown engine {engine!r}")


# ---------------------------------------------------------------------------
# angular machinery shared by Shannon / Renyi / disequilibrium


def _angular_factors(state: HyperState):
    """(alpha_j, degree, mu_{j+1}) for j = 1..D-2 (|m| convention on the last)."""
    return [states.angular_factor_params(state, j)
            for j in range(1, state.spec.dim - 1)]


def angular_shannon_swave(D: int) -> float:
    """ln(2 pi^(D/2) / Gamma(D/2)): entropy of the uniform angular density."""
    return math.log(2.0) + (D / 2.0) * math.log(math.pi) - gammaln(D / 2.0)


def _gegenbauer_entropy(degree: int, lam: float, tol: float | None) -> float:
    if degree == 0:
        # constant orthonormal polynomial: entropy is the log weight mass
        return specfun._log_weight_mass("gegenbauer", lam)
    return oracle.polynomial_entropy(PolySpec("gegenbauer", degree, lam), tol=tol)


def angular_log_moment_constant(state: HyperState) -> float:
    """B_1: ln 2 pi minus the exact <ln(1-x^2)> log-moments of the factors."""
    total = math.log(2.0 * math.pi)
    D = state.spec.dim
    for j, (aj, deg, mj1) in enumerate(_angular_factors(state), start=1):
        if mj1 == 0:
            continue
        mj = deg + mj1
        bracket = (specfun.digamma(2 * aj + mj + mj1) - specfun.digamma(aj + mj)
                   - math.log(2.0) - 1.0 / (2.0 * (aj + mj)))
        total -= 2.0 * mj1 * bracket
    return total


def angular_shannon(state: HyperState, tol: float | None = None) -> float:
    """Entropy of the angular density: B_1 plus the Gegenbauer entropy kernels."""
    D = state.spec.dim
    if D == 2:
        return math.log(2.0 * math.pi)
    total = angular_log_moment_constant(state)
    for aj, deg, mj1 in _angular_factors(state):
        total += _gegenbauer_entropy(deg, aj + mj1, tol)
    return total


def angular_shannon_direct(state: HyperState, tol: float | None = None) -> float:
    """Same quantity straight from the factor densities (independent route)."""
    D = state.spec.dim
    total = math.log(2.0 * math.pi)
    for j in range(1, D - 1):
        aj, deg, mj1 = states.angular_factor_params(state, j)
        lam = aj + mj1
        roots = (specfun.poly_roots(PolySpec("gegenbauer", deg, lam))
                 if deg > 0 else np.array([]))

        def f(x, j=j, aj=aj):
            val = float(states.angular_density_factor(state, j, x))
            if val <= 0.0:
                return 0.0
            return -(1.0 - x * x) ** (aj - 0.5) * val * math.log(val)

        pts = sorted(set([-1.0, 1.0]) | set(float(r) for r in roots))
        total += oracle.integrate_adaptive(f, -1.0, 1.0,
                                           singular_points=pts[1:-1], tol=tol).value
    return total


def angular_entropic_moment(state: HyperState, q: float,
                            tol: float | None = None) -> float:
    """Lambda_q = int |Y|^(2q) dOmega, per-factor Gauss-Jacobi (integer q exact)
    or adaptive (real q)."""
    if q <= 0:
        raise DomainError("q must be positive")
    D = state.spec.dim
    log_val = (1.0 - q) * math.log(2.0 * math.pi)
    for aj, deg, mj1 in _angular_factors(state):
        lam = aj + mj1
        spec = PolySpec("gegenbauer", deg, lam, "orthonormal")
        a_exp = q * mj1 + aj - 0.5
        if float(q).is_integer():
            qi = int(q)
            rule = oracle.gauss_rule("jacobi", qi * deg + 2, a_exp, a_exp)

            def log_f(x, spec=spec, qi=qi):
                m, s = specfun.eval_poly_scaled(spec, x)
                with np.errstate(divide="ignore"):
                    return 2.0 * qi * (np.log(np.abs(m)) + s)

            log_val += math.log(rule.integrate_log(log_f))
        else:
            roots = specfun.poly_roots(spec) if deg > 0 else np.array([])

            def f(x, spec=spec, a_exp=a_exp):
                m, s = specfun.eval_poly_scaled(spec, np.array([x]))
                m0, s0 = float(m[0]), float(s[0])
                if m0 == 0.0 or 1.0 - x * x <= 0.0:
                    return 0.0
                return math.exp(2.0 * q * (math.log(abs(m0)) + s0)
                                + a_exp * math.log(1.0 - x * x))

            est = oracle.integrate_adaptive(f, -1.0, 1.0,
                                            singular_points=roots, tol=tol)
            log_val += math.log(est.value)
    return math.exp(log_val)


def angular_renyi(state: HyperState, q: float, tol: float | None = None) -> float:
    return math.log(angular_entropic_moment(state, q, tol=tol)) / (1.0 - q)


# ---------------------------------------------------------------------------
# Shannon entropy, hyperspherical route


def radial_shannon_assembled(state: HyperState, space: Space,
                             tol: float | None = None) -> float:
    """Radial Shannon entropy by the exact decomposition; the Laguerre entropy
    kernel is numeric."""
    D, l, nr = state.spec.dim, state.l, state.n_r
    w = _width(state.spec.omega, space)
    ent = oracle.polynomial_entropy(PolySpec("laguerre", nr, state.alpha), tol=tol)
    return (2 * nr + l + D / 2.0 - math.log(2.0)
            - l * specfun.digamma(nr + l + D / 2.0) + ent - (D / 2.0) * math.log(w))


def radial_shannon_direct(state: HyperState, space: Space,
                          tol: float | None = None) -> float:
    """- int rho_rad ln rho_rad r^(D-1) dr, done in the radius variable."""
    D = state.spec.dim
    w = _width(state.spec.omega, space)
    spec = PolySpec("laguerre", state.n_r, state.alpha, "orthonormal")
    roots = (np.sqrt(specfun.poly_roots(spec) / w) if state.n_r > 0 else np.array([]))

    def f(r):
        if r <= 0.0:
            return 0.0
        lg = float(states.log_radial_density(state, space, np.array([r]))[0])
        if lg == -math.inf:
            return 0.0
        return -math.exp(lg + (D - 1.0) * math.log(r)) * lg

    return oracle.integrate_adaptive(f, 0.0, math.inf,
                                     singular_points=roots, tol=tol).value


def shannon_hyperspherical(state: HyperState, space: Space = Space.POSITION,
                           engine: str = ENGINE_CLOSED,
                           tol: float | None = None) -> MeasureValue:
    """Total Shannon entropy; both routes carry the oracle tag because the
    polynomial-entropy kernels have no known closed forms.

    engine 'closed' assembles the exact decomposition (radial ladder constant
    plus entropy kernels plus angular constant); 'oracle' integrates the
    densities directly.
    """
    if tol is None:
        tol = oracle.default_tolerance() if state.n_r < 200 else oracle.RYDBERG_TOL
    if engine == ENGINE_CLOSED:
        value = (radial_shannon_assembled(state, space, tol=tol)
                 + angular_shannon(state, tol=tol))
    elif engine == ENGINE_ORACLE:
        value = (radial_shannon_direct(state, space, tol=tol)
                 + angular_shannon_direct(state, tol=tol))
    else:
        raise DomainError(f"unknown engine {engine!r}")
    return MeasureValue(value, space, ENGINE_ORACLE,
                        error_estimate=tol * max(1.0, abs(value)))


def shannon(state, space: Space = Space.POSITION, engine: str = ENGINE_CLOSED,
            tol: float | None = None) -> MeasureValue:
    if isinstance(state, CartesianState):
        return shannon_cartesian(state, space, engine, tol=tol)
    return shannon_hyperspherical(state, space, engine, tol=tol)


# ---------------------------------------------------------------------------
# Renyi entropies


def _axis_renyi_log_integral(n: int, q: float, tol: float | None) -> float:
    """ln int rho_axis(t)^q dt for the unit-width axis density of degree n."""
    spec = PolySpec("hermite", n, None, "orthonormal")
    if float(q).is_integer():
        qi = int(q)
        rule = oracle.gauss_rule("hermite", qi * n + 2)
        sq = math.sqrt(qi)

        def log_f(u):
            m, s = specfun.eval_poly_scaled(spec, u / sq)
            with np.errstate(divide="ignore"):
                return 2.0 * qi * (np.log(np.abs(m)) + s)

        return math.log(rule.integrate_log(log_f)) - 0.5 * math.log(qi)
    roots = specfun.poly_roots(spec) if n > 0 else np.array([])

    def f(t):
        m, s = specfun.eval_poly_scaled(spec, np.array([t]))
        m0, s0 = float(m[0]), float(s[0])
        if m0 == 0.0:
            return 0.0
        return math.exp(q * (-t * t + 2.0 * (math.log(abs(m0)) + s0)))

    est = oracle.integrate_adaptive(f, -math.inf, math.inf,
                                    singular_points=roots, tol=tol)
    return math.log(est.value)


def renyi_cartesian(state: CartesianState, q: float, space: Space = Space.POSITION,
                    engine: str = ENGINE_CLOSED,
                    tol: float | None = None) -> MeasureValue:
    """Renyi entropy of a Cartesian state.

    The closed route requires integer q >= 2 (Hermite-power linearization);
    any real q > 0, q != 1 is served by the quadrature engine.
    """
    RenyiOrder(q)
    D, omega = state.spec.dim, state.spec.omega
    sign = -1.0 if space is Space.POSITION else 1.0
    if engine == ENGINE_CLOSED:
        if not (float(q).is_integer() and q >= 2):
            raise UnsupportedError(
                "closed Renyi route holds for integer q >= 2; use the oracle engine")
        qi = int(q)
        kq = math.log(math.pi ** (qi - 0.5) * qi ** 0.5) / (qi - 1.0)
        kbar = (math.log(4.0 ** qi) + gammaln(0.5 + qi)
                - 0.5 * math.log(math.pi) - qi * math.log(qi)) / (1.0 - qi)
        value = sign * (D / 2.0) * math.log(omega) + kq * D + kbar * state.odd_count
        for n in state.n:
            half = (n + 1) / 2.0
            value += (qi / (qi - 1.0)) * (-1.0) ** n * (gammaln(half + 0.5) - gammaln(half))
            value += math.log(specfun.lauricella_FA_finite(qi, n % 2, n)) / (1.0 - qi)
        return MeasureValue(value, space, ENGINE_CLOSED)
    if engine == ENGINE_ORACLE:
        w = _width(omega, space)
        log_int = math.fsum(
            _axis_renyi_log_integral(n, q, tol) + 0.5 * (q - 1.0) * math.log(w)
            for n in state.n)
        value = log_int / (1.0 - q)
        return MeasureValue(value, space, ENGINE_ORACLE,
                            error_estimate=(0.0 if float(q).is_integer()
                                            else (tol or oracle.default_tolerance()) * D))
    raise DomainError(f"unknown engine {engine!r}")


def radial_renyi(state: HyperState, q: float, space: Space,
                 tol: float | None = None) -> float:
    """-ln(2 w^(D/2)) + ln N(D, q) / (1 - q) with the weighted Laguerre norm."""
    D = state.spec.dim
    w = _width(state.spec.omega, space)
    norm = oracle.weighted_Lq_norm(state.n_r, state.l, D, q, tol=tol)
    return -math.log(2.0) - (D / 2.0) * math.log(w) + math.log(norm) / (1.0 - q)


def radial_renyi_direct(state: HyperState, q: float, space: Space,
                        tol: float | None = None) -> float:
    """ln int rho_rad^q r^(D-1) dr / (1-q), integrated in the radius variable."""
    D = state.spec.dim
    w = _width(state.spec.omega, space)
    spec = PolySpec("laguerre", state.n_r, state.alpha, "orthonormal")
    roots = (np.sqrt(specfun.poly_roots(spec) / w) if state.n_r > 0 else np.array([]))

    def f(r):
        if r <= 0.0:
            return 0.0
        lg = float(states.log_radial_density(state, space, np.array([r]))[0])
        if lg == -math.inf:
            return 0.0
        return math.exp(q * lg + (D - 1.0) * math.log(r))

    est = oracle.integrate_adaptive(f, 0.0, math.inf, singular_points=roots, tol=tol)
    return math.log(est.value) / (1.0 - q)


def renyi_hyperspherical(state: HyperState, q: float, space: Space = Space.POSITION,
                         engine: str = ENGINE_CLOSED,
                         tol: float | None = None) -> MeasureValue:
    """Radial + angular Renyi entropy; integer q is exact (Gauss rules of
    sufficient order), real q goes through the adaptive engine."""
    RenyiOrder(q)
    if engine == ENGINE_CLOSED:
        value = (radial_renyi(state, q, space, tol=tol)
                 + angular_renyi(state, q, tol=tol))
        exact = float(q).is_integer()
        return MeasureValue(value, space,
                            ENGINE_CLOSED if exact else ENGINE_ORACLE,
                            error_estimate=None if exact else (tol or oracle.default_tolerance()))
    if engine == ENGINE_ORACLE:
        value = radial_renyi_direct(state, q, space, tol=tol)
        value += math.log(angular_entropic_moment(state, q, tol=tol)) / (1.0 - q)
        return MeasureValue(value, space, ENGINE_ORACLE,
                            error_estimate=(tol or oracle.default_tolerance()))
    raise DomainError(f"unknown engine {engine!r}")


def renyi(state, q: float, space: Space = Space.POSITION,
          engine: str = ENGINE_CLOSED, tol: float | None = None) -> MeasureValue:
    if isinstance(state, CartesianState):
        if engine == ENGINE_CLOSED and not (float(q).is_integer() and q >= 2):
            engine = ENGINE_ORACLE
        return renyi_cartesian(state, q, space, engine, tol=tol)
    return renyi_hyperspherical(state, q, space, engine, tol=tol)


# ---------------------------------------------------------------------------
# disequilibrium


def disequilibrium_radial(state: HyperState) -> float:
    """Closed triple finite sum for int rho_rad^2 r^(D-1) dr.

    The overall power of two is 2^(1 - D/2 - 2l - 4 n_r); the variant with a
    single l in the exponent fails the quadrature oracle for every l > 0.
    """
    nr, l, D = state.n_r, state.l, state.spec.dim
    omega = state.spec.omega
    tot = []
    for k in range(nr + 1):
        for kp in range(nr + 1):
            base = (specfun.binomial(2 * nr - 2 * k, nr - k)
                    * specfun.binomial(2 * nr - 2 * kp, nr - kp)
                    * math.exp(gammaln(2 * k + 1.0) - gammaln(k + 1.0)
                               + gammaln(2 * kp + 1.0) - gammaln(kp + 1.0)
                               - gammaln(l + D / 2.0 + k) - gammaln(l + D / 2.0 + kp)))
            for r in range(min(2 * k, 2 * kp) + 1):
                tot.append(base
                           * specfun.binomial(1.0 - D / 2.0, 2 * k - r)
                           * specfun.binomial(1.0 - D / 2.0, 2 * kp - r)
                           * specfun.binomial(2 * l + D / 2.0 - 1.0 + r, r))
    pref = (omega ** (D / 2.0)
            * 2.0 ** (1.0 - D / 2.0 - 2 * l - 4 * nr)
            * math.exp(gammaln(D / 2.0 + 2 * l)))
    return pref * math.fsum(tot)


def disequilibrium_angular(state: HyperState) -> float:
    """(1/2pi) prod_j sum_k b^2 over the Dougall linearization coefficients."""
    D = state.spec.dim
    out = 1.0 / (2.0 * math.pi)
    if D == 2:
        return out
    for aj, deg, mj1 in _angular_factors(state):
        exp_ = specfun.gegenbauer_square_linearize(deg, aj + mj1, mj1)
        out *= math.fsum(c * c for _, c in exp_.coefficients)
    return out


def disequilibrium_angular_3j(l: int, m: int) -> float:
    """D = 3 angular route through squared 3j symbols."""
    tot = []
    for lp in range(0, 2 * l + 1):
        w1 = specfun.wigner_3j_cached(l, l, lp, 0, 0, 0)
        w2 = specfun.wigner_3j_cached(l, l, lp, m, m, -2 * m)
        tot.append(((2 * l + 1.0) ** 2 * (2 * lp + 1.0) / (4.0 * math.pi))
                   * w1 * w1 * w2 * w2)
    return math.fsum(tot)


def disequilibrium(state: HyperState, engine: str = ENGINE_CLOSED,
                   tol: float | None = None) -> MeasureValue:
    """int rho^2 over position space; equals exp(-R_2[rho])."""
    if engine == ENGINE_ORACLE:
        r2 = renyi_hyperspherical(state, 2.0, Space.POSITION, ENGINE_ORACLE, tol=tol)
        return MeasureValue(math.exp(-r2.value), Space.POSITION, ENGINE_ORACLE,
                            error_estimate=r2.error_estimate)
    if engine != ENGINE_CLOSED:
        raise DomainError(f"unknown engine {engine!r}")
    radial = disequilibrium_radial(state)
    angular = disequilibrium_angular(state)
    value = radial * angular
    if state.spec.dim == 3:
        alt = radial * disequilibrium_angular_3j(state.l, state.m)
        if abs(alt - value) > 1e-9 * max(abs(value), abs(alt)):
            raise ConsistencyError(
                f"3j and Dougall angular routes disagree: {alt} vs {value}")
    r2 = renyi_hyperspherical(state, 2.0, Space.POSITION, ENGINE_CLOSED)
    if abs(math.exp(-r2.value) - value) > 1e-9 * max(abs(value), 1e-300):
        raise ConsistencyError(
            f"exp(-R_2) = {math.exp(-r2.value)} vs disequilibrium {value}")
    return MeasureValue(value, Space.POSITION, ENGINE_CLOSED)
