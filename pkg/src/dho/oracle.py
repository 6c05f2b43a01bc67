"""High-precision numerical integration engine.

Gauss rules come from the symmetric Jacobi matrix (Golub-Welsch); weights are
kept in log space as well so extreme Laguerre parameters (alpha up to a few
thousand, needed by the high-dimension checks) stay finite.  The adaptive
integrator subdivides at supplied singular points (polynomial roots, origin)
and handles semi-infinite tails by an exponential substitution after locating
a truncation point where the weight has decayed below 1e-20 of its peak.
"""

from __future__ import annotations

import math
import os
import threading
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

from . import specfun
from .errors import ConvergenceError, DomainError
from .specfun import PolySpec

DEFAULT_TOL = 1e-11
RYDBERG_TOL = 1e-8  # for radial quantum numbers in the hundreds and beyond
ABS_FLOOR = 1e-14


def default_tolerance() -> float:
    """Library default, overridable through the HO_ORACLE_TOL variable."""
    raw = os.environ.get("HO_ORACLE_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError as exc:
        raise DomainError(f"HO_ORACLE_TOL is not a number: {raw!r}") from exc
    if not tol > 0.0:
        raise DomainError("HO_ORACLE_TOL must be positive")
    return tol


@dataclass(frozen=True)
class QuadratureRule:
    family: str                 # hermite | laguerre | jacobi
    parameters: tuple
    order: int
    nodes: np.ndarray
    weights: np.ndarray
    log_weights: np.ndarray

    def integrate(self, f) -> float:
        return float(np.sum(self.weights * f(self.nodes)))

    def integrate_log(self, log_f) -> float:
        """sum w_i exp(log_f(x_i)) evaluated as a stable log-sum-exp."""
        lo = self.log_weights + log_f(self.nodes)
        m = np.max(lo)
        if not np.isfinite(m):
            return 0.0
        return float(math.exp(m) * np.sum(np.exp(lo - m)))


@dataclass(frozen=True)
class IntegralEstimate:
    value: float
    abs_error_estimate: float
    subdivisions: int


_RULE_CACHE: dict = {}
_RULE_LOCK = threading.Lock()


def _jacobi_recurrence_jacobiweight(a: float, b: float, order: int):
    """Recurrence coefficients for weight (1-x)^a (1+x)^b on [-1, 1]."""
    k = np.arange(order, dtype=float)
    ab = a + b
    diag = np.empty(order)
    if order > 0:
        diag[0] = (b - a) / (ab + 2.0)
    kk = k[1:]
    with np.errstate(invalid="ignore"):
        diag[1:] = (b * b - a * a) / ((2 * kk + ab) * (2 * kk + ab + 2.0))
    off = np.empty(max(order - 1, 0))
    if order > 1:
        k1 = np.arange(1, order, dtype=float)
        num = 4.0 * k1 * (k1 + a) * (k1 + b) * (k1 + ab)
        den = (2 * k1 + ab) ** 2 * (2 * k1 + ab + 1.0) * (2 * k1 + ab - 1.0)
        # k = 1 has a removable 0/0 at a + b = -1; its pole-free form follows
        with np.errstate(invalid="ignore", divide="ignore"):
            off = np.sqrt(num / den)
        off[0] = math.sqrt(4.0 * (1 + a) * (1 + b) / ((2 + ab) ** 2 * (3 + ab)))
    return diag, off


def _newton_polish_nodes(nodes: np.ndarray, diag: np.ndarray,
                         off: np.ndarray, steps: int = 2) -> np.ndarray:
    """Polish eigenvalue nodes on the degree-n recurrence polynomial; the
    shared log scale cancels in the Newton ratio."""
    x = np.asarray(nodes, dtype=float)
    n = len(diag)
    for _ in range(steps):
        p_prev = np.zeros_like(x)
        p_cur = np.ones_like(x)
        d_prev = np.zeros_like(x)
        d_cur = np.zeros_like(x)
        for k in range(n):
            b_next = off[k] if k < n - 1 else 1.0
            b_prev = off[k - 1] if k > 0 else 0.0
            p_next = ((x - diag[k]) * p_cur - b_prev * p_prev) / b_next
            d_next = ((x - diag[k]) * d_cur + p_cur - b_prev * d_prev) / b_next
            p_prev, p_cur = p_cur, p_next
            d_prev, d_cur = d_cur, d_next
            mag = np.maximum(np.abs(p_cur), np.abs(d_cur))
            big = mag > 1e120
            if np.any(big):
                sc = np.where(big, mag, 1.0)
                p_prev, p_cur = p_prev / sc, p_cur / sc
                d_prev, d_cur = d_prev / sc, d_cur / sc
        step = np.where(d_cur != 0.0, p_cur / np.where(d_cur == 0.0, 1.0, d_cur), 0.0)
        step = np.clip(step, -1e-6 * (1 + np.abs(x)), 1e-6 * (1 + np.abs(x)))
        x = x - step
    return x


def _christoffel_log_weights(nodes: np.ndarray, diag: np.ndarray,
                             off: np.ndarray, log_mass: float) -> np.ndarray:
    """log Gauss weights as 1 / sum_k p_k(x_i)^2 over the orthonormal family.

    Eigenvector first components underflow doubles for extreme nodes; the
    Christoffel sum with a running per-node log scale does not.
    """
    order = len(diag)
    x = np.asarray(nodes, dtype=float)
    p_prev = np.zeros_like(x)
    p_cur = np.ones_like(x)  # mantissa; the scale lives in logs
    logs = np.full_like(x, -0.5 * log_mass)
    acc_s = 2.0 * logs.copy()
    acc = np.ones_like(x)
    for k in range(order - 1):
        p_next = ((x - diag[k]) * p_cur - (off[k - 1] if k > 0 else 0.0) * p_prev) / off[k]
        p_prev, p_cur = p_cur, p_next
        big = np.abs(p_cur) > 1e120
        if np.any(big):
            sc = np.where(big, np.abs(p_cur), 1.0)
            p_prev = p_prev / sc
            p_cur = p_cur / sc
            logs = logs + np.log(sc)
        with np.errstate(divide="ignore"):
            term = 2.0 * (np.log(np.abs(np.where(p_cur == 0.0, 1.0, p_cur)))
                          + logs)
            term = np.where(p_cur == 0.0, -np.inf, term)
        new_s = np.maximum(acc_s, term)
        acc = acc * np.exp(acc_s - new_s) + np.exp(term - new_s)
        acc_s = new_s
    return -(acc_s + np.log(acc))


def gauss_rule(family: str, order: int, *parameters: float) -> QuadratureRule:
    """Gauss rule for the named weight family.

    hermite: weight e^{-x^2} on R, no parameters.
    laguerre: weight x^alpha e^{-x} on [0, inf), parameter alpha > -1.
    jacobi: weight (1-x)^a (1+x)^b on [-1, 1], parameters a, b > -1.
    """
    if order < 1:
        raise DomainError("order must be >= 1")
    key = (family, tuple(float(p) for p in parameters), int(order))
    with _RULE_LOCK:
        hit = _RULE_CACHE.get(key)
    if hit is not None:
        return hit

    if family == "hermite":
        if parameters:
            raise DomainError("hermite rule takes no parameters")
        diag, off = specfun._jacobi_coeffs("hermite", None, order)
        log_mass = 0.5 * math.log(math.pi)
    elif family == "laguerre":
        (alpha,) = parameters
        if alpha <= -1.0:
            raise DomainError("laguerre rule requires alpha > -1")
        diag, off = specfun._jacobi_coeffs("laguerre", alpha, order)
        log_mass = gammaln(alpha + 1.0)
    elif family == "jacobi":
        a, b = parameters
        if a <= -1.0 or b <= -1.0:
            raise DomainError("jacobi rule requires a, b > -1")
        diag, off = _jacobi_recurrence_jacobiweight(a, b, order)
        log_mass = ((a + b + 1.0) * math.log(2.0) + gammaln(a + 1.0)
                    + gammaln(b + 1.0) - gammaln(a + b + 2.0))
    else:
        raise DomainError(f"unknown rule family {family!r}")

    if order == 1:
        nodes = np.array([diag[0]])
    else:
        nodes = eigh_tridiagonal(diag, off, eigvals_only=True)
        nodes = np.sort(_newton_polish_nodes(nodes, diag, off))
    log_w = _christoffel_log_weights(nodes, diag, off, log_mass)
    with np.errstate(over="ignore"):
        weights = np.exp(log_w)
    rule = QuadratureRule(family, tuple(float(p) for p in parameters), order,
                          nodes, weights, log_w)
    with _RULE_LOCK:
        _RULE_CACHE[key] = rule
    return rule


# ---------------------------------------------------------------------------
# adaptive integration


def _panel_quad(f, a: float, b: float, epsabs: float, epsrel: float):
    # per-panel warnings are expected near log singularities; the caller
    # enforces the global error bound instead
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        out = quad(f, a, b, epsabs=epsabs, epsrel=epsrel, limit=300, full_output=1)
    val, err = out[0], out[1]
    info = out[2]
    ok = len(out) < 4
    return val, err, int(info.get("last", 1)), ok


def _find_truncation(f, a: float, direction: float) -> float:
    """Walk outward until |f| has fallen below 1e-20 of the peak seen."""
    peak = 0.0
    step = 1.0
    x = a + direction * step
    last_good = x
    quiet = 0
    for _ in range(200):
        v = abs(f(x))
        peak = max(peak, v, 1e-300)
        if v < 1e-20 * peak:
            quiet += 1
            if quiet >= 2:
                return x
        else:
            quiet = 0
            last_good = x
        step *= 1.6
        x = a + direction * step
    return max(last_good + direction * step, x) if direction > 0 else x


def _tail_integral(f, a: float, sign: float, epsabs: float, epsrel: float):
    """Integral over [a, +inf) (sign=+1) or (-inf, a] (sign=-1)."""
    g = (lambda v: f(a + v)) if sign > 0 else (lambda v: f(a - v))
    V = abs(_find_truncation(g, 0.0, 1.0))
    V = max(V, 2.0)
    v1, e1, n1, ok1 = _panel_quad(g, 0.0, 1.0, epsabs, epsrel)
    # x = a +/- e^u substitution on the far part
    h = lambda u: g(math.exp(u)) * math.exp(u)
    v2, e2, n2, ok2 = _panel_quad(h, 0.0, math.log(V), epsabs, epsrel)
    return v1 + v2, e1 + e2, n1 + n2, ok1 and ok2


def integrate_adaptive(f, lo: float, hi: float, singular_points=(),
                       tol: float | None = None) -> IntegralEstimate:
    """Adaptive integral of f over [lo, hi] with interior singular points.

    The domain is split at every supplied singular point so each panel sees at
    most a one-sided integrable singularity; +-inf endpoints are handled by
    truncation plus exponential substitution.
    """
    if tol is None:
        tol = default_tolerance()
    pts = sorted(p for p in set(float(p) for p in singular_points)
                 if np.isfinite(p) and lo < p < hi)
    edges = [lo] + pts + [hi]
    total = 0.0
    err = 0.0
    panels = 0
    ok = True
    for a, b in zip(edges[:-1], edges[1:]):
        if a == b:
            continue
        if math.isinf(a) and math.isinf(b):
            v1, e1, n1, k1 = _tail_integral(f, 0.0, 1.0, ABS_FLOOR, tol)
            v2, e2, n2, k2 = _tail_integral(f, 0.0, -1.0, ABS_FLOOR, tol)
            v, e, n, k = v1 + v2, e1 + e2, n1 + n2, k1 and k2
        elif math.isinf(b):
            v, e, n, k = _tail_integral(f, a, 1.0, ABS_FLOOR, tol)
        elif math.isinf(a):
            v, e, n, k = _tail_integral(f, b, -1.0, ABS_FLOOR, tol)
        else:
            v, e, n, k = _panel_quad(f, a, b, ABS_FLOOR, tol)
        total += v
        err += e
        panels += n
        ok = ok and k
    bound = max(tol * abs(total), ABS_FLOOR)
    if not ok and err > 10.0 * bound:
        raise ConvergenceError(
            f"adaptive integration stalled: err={err:.3e} target={bound:.3e}",
            value=total, error_estimate=err)
    return IntegralEstimate(total, err, panels)


# ---------------------------------------------------------------------------
# vectorized tanh-sinh panels (log-singular endpoints, batched integrands)


def _tanh_sinh_nodes(level: int):
    h = 0.5 ** level
    t_max = 6.1
    k = np.arange(-int(t_max / h), int(t_max / h) + 1)
    t = k * h
    sinh_t = np.sinh(t)
    u = np.tanh(0.5 * math.pi * sinh_t)
    w = h * 0.5 * math.pi * np.cosh(t) / np.cosh(0.5 * math.pi * sinh_t) ** 2
    keep = w > 1e-320
    return u[keep], w[keep]


def integrate_panels_vectorized(f_vec, edges, tol: float | None = None,
                                max_level: int = 11) -> IntegralEstimate:
    """Tanh-sinh composite over the panel edges; f_vec takes an ndarray.

    Endpoint singularities (the t^2 ln t^2 kind at polynomial roots) are
    absorbed by the double-exponential clustering; each refinement level
    roughly doubles the digits until tol is met.
    """
    if tol is None:
        tol = default_tolerance()
    edges = np.asarray(sorted(edges), dtype=float)
    if len(edges) < 2:
        raise DomainError("need at least one panel")
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    prev = None
    for level in range(4, max_level + 1):
        u, w = _tanh_sinh_nodes(level)
        x = (mid[:, None] + half[:, None] * u[None, :]).ravel()
        vals = np.asarray(f_vec(x), dtype=float).reshape(len(mid), len(u))
        total = float(np.sum((half[:, None] * w[None, :]) * vals))
        if prev is not None and abs(total - prev) <= max(tol * abs(total), ABS_FLOOR):
            return IntegralEstimate(total, abs(total - prev), len(mid) * len(u))
        prev = total
    raise ConvergenceError("tanh-sinh refinement exhausted", value=prev,
                           error_estimate=abs(total - prev))


def _laguerre_truncation(alpha: float, n: int, q: float = 1.0) -> float:
    """Upper edge where x^alpha e^-x (squared-polynomial) mass is below 1e-22."""
    edge = 4.0 * n + 2.0 * alpha + 2.0
    return edge + 12.0 * math.sqrt(edge) / math.sqrt(q) + 60.0 / q


# ---------------------------------------------------------------------------
# weighted Lq norms of orthonormal Laguerre polynomials


def weighted_Lq_norm(n_r: int, l: int, D: float, q: float,
                     tol: float | None = None) -> float:
    """N_{n_r,l}(D, q) = int ( [Lt_n^(alpha)]^2 w_alpha )^q x^beta dx.

    alpha = l + D/2 - 1, beta = (1-q)(D/2 - 1).  Integer q is exact through a
    generalized Gauss-Laguerre rule of parameter beta + q alpha with the x ->
    x/q substitution; non-integer q falls back to the adaptive engine.
    """
    if q <= 0:
        raise DomainError("q must be positive")
    if D < 2:
        raise DomainError("hyperspherical norms require D >= 2")
    alpha = l + D / 2.0 - 1.0
    s = D / 2.0 + l * q - 1.0  # beta + q*alpha
    if s <= -1.0:
        raise DomainError("convergence condition D/2 + l q - 1 > -1 violated")
    beta = (1.0 - q) * (D / 2.0 - 1.0)
    spec = PolySpec("laguerre", n_r, alpha, "orthonormal")
    if float(q).is_integer():
        qi = int(q)
        order = qi * n_r + max(2, int(math.ceil(abs(s))) // 2 + 2)
        rule = gauss_rule("laguerre", order, s)

        def log_f(u):
            m, sc = specfun.eval_poly_scaled(spec, u / qi)
            with np.errstate(divide="ignore"):
                return 2.0 * qi * (np.log(np.abs(m)) + sc)

        val = rule.integrate_log(log_f)
        return val * math.exp(-(s + 1.0) * math.log(qi))

    roots = specfun.poly_roots(spec) if n_r > 0 else np.array([])

    def f_vec(x):
        m, sc = specfun.eval_poly_scaled(spec, x)
        with np.errstate(divide="ignore", invalid="ignore"):
            log_kernel = (2.0 * (np.log(np.abs(m)) + sc)
                          + alpha * np.log(x) - x)
            out = np.exp(q * log_kernel + beta * np.log(x))
        return np.where((x > 0) & (m != 0.0), out, 0.0)

    edges = np.concatenate([[0.0], roots, [_laguerre_truncation(alpha, n_r, q)]])
    return integrate_panels_vectorized(f_vec, edges, tol=tol).value


# ---------------------------------------------------------------------------
# polynomial entropies

_ENTROPY_CACHE: dict = {}
_ENTROPY_LOCK = threading.Lock()


def polynomial_entropy(spec: PolySpec, beta_shift: float = 0.0,
                       tol: float | None = None) -> float:
    """- int x^beta w(x) y_n(x)^2 ln y_n(x)^2 dx for an orthonormal member.

    Subdivision points sit exactly at the polynomial roots, where the t^2 ln
    t^2 integrand vanishes (0 ln 0 = 0).  Gegenbauer uses beta_shift = 0 only.
    """
    if spec.normalization != "orthonormal":
        raise DomainError("polynomial_entropy is defined for orthonormal specs")
    if tol is None:
        tol = default_tolerance()
    key = (spec.family, spec.degree, spec.parameter, float(beta_shift), tol)
    with _ENTROPY_LOCK:
        hit = _ENTROPY_CACHE.get(key)
    if hit is not None:
        return hit
    n = spec.degree
    if spec.family == "laguerre":
        lo, hi = 0.0, _laguerre_truncation(float(spec.parameter), n)

        def log_weight(x):
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.where(x > 0, spec.parameter * np.log(np.abs(x)) - x,
                                -np.inf)

    elif spec.family == "gegenbauer":
        if beta_shift != 0.0:
            raise DomainError("beta_shift applies to the laguerre weight only")
        lo, hi = -1.0, 1.0

        def log_weight(x):
            t = 1.0 - x * x
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.where(t > 0, (spec.parameter - 0.5) * np.log(np.abs(t)),
                                -np.inf)

    elif spec.family == "hermite":
        span = math.sqrt(2.0 * n + 1.0) + 12.0
        lo, hi = -span, span

        def log_weight(x):
            return -x * x

    else:  # pragma: no cover
        raise DomainError(spec.family)

    roots = specfun.poly_roots(spec) if n > 0 else np.array([])

    def f_vec(x):
        m, sc = specfun.eval_poly_scaled(spec, x)
        with np.errstate(divide="ignore", invalid="ignore"):
            ln_y2 = 2.0 * (np.log(np.abs(m)) + sc)
            lw = log_weight(x)
            extra = beta_shift * np.log(np.abs(x)) if beta_shift != 0.0 else 0.0
            out = -np.exp(lw + ln_y2 + extra) * ln_y2
        return np.where((m != 0.0) & np.isfinite(lw), out, 0.0)

    edges = np.concatenate([[lo], roots, [hi]])
    value = integrate_panels_vectorized(f_vec, edges, tol=tol).value
    with _ENTROPY_LOCK:
        _ENTROPY_CACHE[key] = value
    return value
