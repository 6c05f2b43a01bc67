"""Special functions and polynomial linearization machinery.

Hermite / Laguerre / Gegenbauer evaluation by three-term recurrence (both
orthogonal and orthonormal normalizations), roots via the symmetric Jacobi
matrix, terminating hypergeometric sums, the finite Lauricella-A sum used by
the integer-order Renyi closed form, square/power linearizations, Bessel J,
and exact Wigner 3j symbols.

Recurrences are used directly (never factorial ratios) so degrees beyond 150
and parameters beyond 1e3 stay finite; the *_scaled variants additionally
carry an explicit log scale factor for extreme regimes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln, gammasgn, jv, psi

from .errors import DomainError, UnsupportedError

EULER_GAMMA = 0.5772156649015329

FAMILIES = ("hermite", "laguerre", "gegenbauer")
NORMALIZATIONS = ("orthogonal", "orthonormal")


@dataclass(frozen=True)
class PolySpec:
    """One member of a classical orthogonal family.

    parameter is the Laguerre alpha (> -1) or Gegenbauer lambda (> -1/2);
    Hermite takes none.
    """

    family: str
    degree: int
    parameter: float | None = None
    normalization: str = "orthonormal"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        if self.normalization not in NORMALIZATIONS:
            raise DomainError(f"unknown normalization {self.normalization!r}")
        if self.degree < 0 or self.degree != int(self.degree):
            raise DomainError("degree must be a nonnegative integer")
        if self.family == "hermite":
            if self.parameter is not None:
                raise DomainError("hermite takes no parameter")
        elif self.family == "laguerre":
            if self.parameter is None or self.parameter <= -1.0:
                raise DomainError("laguerre requires alpha > -1")
        elif self.family == "gegenbauer":
            if self.parameter is None or self.parameter <= -0.5:
                raise DomainError("gegenbauer requires lambda > -1/2")


@dataclass(frozen=True)
class LinearizationExpansion:
    """Finite expansion of a polynomial square/power in a single family.

    Reconstruction: sum of value * p_index(argument_scale * x), where p is the
    target family member with `target_parameter` and the stated normalization.
    """

    target_family: str
    target_parameter: float | None
    target_normalization: str
    argument_scale: float
    coefficients: tuple[tuple[int, float], ...]

    def __call__(self, x):
        out = 0.0 * np.asarray(x, dtype=float)
        for idx, val in self.coefficients:
            spec = PolySpec(self.target_family, idx, self.target_parameter,
                            self.target_normalization)
            out = out + val * eval_poly(spec, self.argument_scale * np.asarray(x, dtype=float))
        return out


# ---------------------------------------------------------------------------
# gamma-type scalars


def ln_gamma(x: float) -> float:
    """log |Gamma(x)|; poles at non-positive integers are domain errors."""
    if x <= 0.0 and x == math.floor(x):
        raise DomainError(f"ln_gamma pole at {x}")
    return math.lgamma(x)


def digamma(x: float) -> float:
    if x <= 0.0 and x == math.floor(x):
        raise DomainError(f"digamma pole at {x}")
    return float(psi(x))


def pochhammer(a: float, j: int) -> float:
    """Rising factorial (a)_j as a direct product; exact sign handling."""
    if j < 0 or j != int(j):
        raise DomainError("pochhammer index must be a nonnegative integer")
    out = 1.0
    for t in range(int(j)):
        out *= a + t
    return out


def binomial(x: float, m: int) -> float:
    """Generalized binomial coefficient binom(x, m) for integer m >= 0."""
    if m < 0:
        return 0.0
    out = 1.0
    for t in range(1, m + 1):
        out *= (x - m + t) / t
    return out


def log_abs_binomial(x: float, m: int) -> tuple[float, float]:
    """(log |binom(x, m)|, sign); sign 0 means the coefficient vanishes."""
    if m < 0:
        return -math.inf, 0.0
    if m == 0:
        return 0.0, 1.0
    if x == math.floor(x):
        xi = int(x)
        if 0 <= xi < m:
            return -math.inf, 0.0
        if xi < 0:
            # binom(-t, m) = (-1)^m binom(t + m - 1, m)
            lg = (math.lgamma(m - xi + 0.0) - math.lgamma(m + 1.0)
                  - math.lgamma(float(-xi)))
            return lg, float((-1) ** m)
    lg = math.lgamma(x + 1.0) - math.lgamma(m + 1.0) - math.lgamma(x - m + 1.0)
    sign = gammasgn(x + 1.0) * gammasgn(x - m + 1.0)
    return lg, float(sign)


# ---------------------------------------------------------------------------
# recurrence evaluation

def _jacobi_coeffs(family: str, parameter, order: int):
    """Diagonal / off-diagonal of the symmetric Jacobi matrix (orthonormal)."""
    k = np.arange(order, dtype=float)
    if family == "hermite":
        diag = np.zeros(order)
        off = np.sqrt(k[1:] / 2.0)
    elif family == "laguerre":
        a = float(parameter)
        diag = 2.0 * k + a + 1.0
        off = np.sqrt(k[1:] * (k[1:] + a))
    elif family == "gegenbauer":
        lam = float(parameter)
        diag = np.zeros(order)
        kk = k[1:]
        # k=1 entry written pole-free (the k+lam-1 factor cancels)
        off = np.empty(order - 1) if order > 1 else np.empty(0)
        if order > 1:
            off[0] = 0.5 * math.sqrt(2.0 / (1.0 + lam))
            if order > 2:
                kk2 = kk[1:]
                off[1:] = 0.5 * np.sqrt(kk2 * (kk2 + 2 * lam - 1.0)
                                        / ((kk2 + lam) * (kk2 + lam - 1.0)))
    else:  # pragma: no cover
        raise DomainError(family)
    return diag, off


def _log_weight_mass(family: str, parameter) -> float:
    """log of integral of the family weight over its support."""
    if family == "hermite":
        return 0.5 * math.log(math.pi)
    if family == "laguerre":
        return math.lgamma(float(parameter) + 1.0)
    lam = float(parameter)
    return 0.5 * math.log(math.pi) + math.lgamma(lam + 0.5) - math.lgamma(lam + 1.0)


def eval_poly_scaled(spec: PolySpec, x):
    """Evaluate spec at x as (mantissa, log_scale): value = m * exp(s).

    Only orthonormal normalization; used where plain doubles would overflow.
    """
    if spec.normalization != "orthonormal":
        raise DomainError("scaled evaluation is defined for orthonormal specs")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    n = spec.degree
    diag, off = _jacobi_coeffs(spec.family, spec.parameter, max(n + 1, 2))
    logs = np.full_like(x, -0.5 * _log_weight_mass(spec.family, spec.parameter))
    p_prev = np.zeros_like(x)
    p_cur = np.ones_like(x)
    for k in range(n):
        b_next = off[k]
        b_prev = off[k - 1] if k > 0 else 0.0
        p_next = ((x - diag[k]) * p_cur - b_prev * p_prev) / b_next
        p_prev, p_cur = p_cur, p_next
        big = np.abs(p_cur) > 1e120
        if np.any(big):
            sc = np.where(big, np.abs(p_cur), 1.0)
            p_prev = p_prev / sc
            p_cur = p_cur / sc
            logs = logs + np.log(sc)
    return p_cur, logs


def eval_poly_with_derivative_scaled(spec: PolySpec, x):
    """(p, p', common log scale) for the orthonormal member at x.

    Newton corrections p/p' are scale-free, so root polishing works at any
    degree/parameter without overflow.
    """
    if spec.normalization != "orthonormal":
        raise DomainError("scaled evaluation is defined for orthonormal specs")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    n = spec.degree
    diag, off = _jacobi_coeffs(spec.family, spec.parameter, max(n + 1, 2))
    logs = np.full_like(x, -0.5 * _log_weight_mass(spec.family, spec.parameter))
    p_prev = np.zeros_like(x)
    p_cur = np.ones_like(x)
    d_prev = np.zeros_like(x)
    d_cur = np.zeros_like(x)
    for k in range(n):
        b_next = off[k]
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
            logs = logs + np.log(sc)
    return p_cur, d_cur, logs


def eval_poly(spec: PolySpec, x):
    """Evaluate the polynomial at x (scalar or array) by recurrence."""
    scalar = np.isscalar(x)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if spec.family == "gegenbauer" and np.any(np.abs(xa) > 1.0 + 1e-12):
        raise DomainError("gegenbauer argument must lie in [-1, 1]")
    if spec.normalization == "orthonormal":
        m, s = eval_poly_scaled(spec, xa)
        out = m * np.exp(s)
    else:
        out = _eval_orthogonal(spec.family, spec.degree, spec.parameter, xa)
    return float(out[0]) if scalar else out


def _eval_orthogonal(family: str, n: int, parameter, x: np.ndarray) -> np.ndarray:
    p0 = np.ones_like(x)
    if n == 0:
        return p0
    if family == "hermite":
        p1 = 2.0 * x
        for k in range(1, n):
            p0, p1 = p1, 2.0 * x * p1 - 2.0 * k * p0
    elif family == "laguerre":
        a = float(parameter)
        p1 = a + 1.0 - x
        for k in range(1, n):
            p0, p1 = p1, ((2 * k + a + 1.0 - x) * p1 - (k + a) * p0) / (k + 1.0)
    elif family == "gegenbauer":
        lam = float(parameter)
        p1 = 2.0 * lam * x
        for k in range(2, n + 1):
            p0, p1 = p1, (2.0 * (k + lam - 1.0) * x * p1 - (k + 2.0 * lam - 2.0) * p0) / k
    else:  # pragma: no cover
        raise DomainError(family)
    return p1


def newton_polish_roots(spec: PolySpec, roots: np.ndarray, steps: int = 2) -> np.ndarray:
    onspec = PolySpec(spec.family, spec.degree, spec.parameter, "orthonormal")
    for _ in range(steps):
        p, dp, _ = eval_poly_with_derivative_scaled(onspec, roots)
        step = np.where(dp != 0.0, p / np.where(dp == 0.0, 1.0, dp), 0.0)
        # Newton from eigenvalue starts is already near-converged; cap the move
        step = np.clip(step, -1e-6 * (1 + np.abs(roots)), 1e-6 * (1 + np.abs(roots)))
        roots = roots - step
    return roots


def poly_roots(spec: PolySpec) -> np.ndarray:
    """All real roots, ascending; eigenvalues of the Jacobi matrix plus two
    Newton polish steps on the recurrence-evaluated polynomial."""
    n = spec.degree
    if n < 1:
        raise DomainError("roots require degree >= 1")
    diag, off = _jacobi_coeffs(spec.family, spec.parameter, n)
    roots = eigh_tridiagonal(diag, off, eigvals_only=True)
    roots = newton_polish_roots(spec, roots)
    if spec.family == "gegenbauer":
        roots = np.clip(roots, -1.0, 1.0)
    return np.sort(roots)


# ---------------------------------------------------------------------------
# hypergeometric sums


def hyp_3F2_unit(a1: float, a2: float, a3: float, b1: float, b2: float) -> float:
    """Terminating 3F2 at unit argument, compensated summation.

    One of a1..a3 must be a non-positive integer.
    """
    tops = [a for a in (a1, a2, a3) if a <= 0 and a == math.floor(a)]
    if not tops:
        raise UnsupportedError("3F2(1) requires a non-positive integer numerator")
    jmax = int(-max(tops))
    terms = [1.0]
    term = 1.0
    for j in range(jmax):
        den = (b1 + j) * (b2 + j)
        if den == 0.0:
            raise DomainError("3F2 denominator pochhammer hits a pole")
        term *= (a1 + j) * (a2 + j) * (a3 + j) / (den * (j + 1.0))
        if term == 0.0:
            break
        terms.append(term)
    return math.fsum(terms)


def hyp_pFq(numerators: Sequence[float], denominators: Sequence[float], z: float,
            tol: float = 1e-16, max_terms: int = 100000) -> float:
    """Generalized hypergeometric series pFq(num; den; z).

    Terminating series are summed exactly; convergent series are summed with a
    cancellation guard (series whose partial terms exceed the result by > 1e3
    are re-evaluated in extended precision via mpmath).  1F1 with z < -30 goes
    through Kummer's transformation first.
    """
    num = [float(a) for a in numerators]
    den = [float(b) for b in denominators]
    p, q = len(num), len(den)
    if p == 1 and q == 1 and z < -30.0:
        # Kummer: 1F1(a; b; z) = e^z 1F1(b - a; b; -z), positive-term series
        return math.exp(z) * hyp_pFq([den[0] - num[0]], den, -z, tol=tol)
    if p > q + 1 and not any(a <= 0 and a == math.floor(a) for a in num):
        raise UnsupportedError("divergent pFq request")
    terms = [1.0]
    term = 1.0
    maxabs = 1.0
    for j in range(max_terms):
        fac = 1.0
        for a in num:
            fac *= a + j
        for b in den:
            bj = b + j
            if bj == 0.0:
                raise DomainError("pFq denominator pochhammer hits a pole")
            fac /= bj
        term *= fac * z / (j + 1.0)
        if term == 0.0:
            break
        terms.append(term)
        maxabs = max(maxabs, abs(term))
        if abs(term) < tol * max(1.0, abs(math.fsum(terms[-4:]))) and j > 3:
            # two consecutive negligible terms end the sum
            if abs(terms[-2]) < tol:
                break
    else:
        raise UnsupportedError("pFq series did not converge within term budget")
    s = math.fsum(terms)
    if maxabs > 1e3 * max(abs(s), 1e-300):
        import mpmath as mp

        with mp.workdps(40):
            s = float(mp.hyper(num, den, z))
    return s


def lauricella_FA_finite(q: int, nu: int, n: int) -> float:
    """The 2q-fold finite Lauricella-A sum for the Hermite-power Renyi form.

    Requires n = nu (mod 2).  The sum runs over j_1..j_{2q} in
    [0, (n - nu)/2]; small index spaces are accumulated in fixed
    lexicographic order with compensated summation, large ones through an
    equivalent deterministic convolution over the total degree.
    """
    if q < 1 or int(q) != q:
        raise DomainError("q must be a positive integer")
    if nu not in (0, 1) or n < 0:
        raise DomainError("nu must be 0/1 and n nonnegative")
    if n % 2 != nu:
        raise DomainError(f"parity mismatch: n={n}, nu={nu}")
    top = (n - nu) // 2
    if top == 0:
        return 1.0
    base = [pochhammer((nu - n) / 2.0, j)
            / (pochhammer(nu + 0.5, j) * math.factorial(j)) * (1.0 / q) ** j
            for j in range(top + 1)]
    if (top + 1) ** (2 * q) <= 100_000:
        terms = []
        for js in product(range(top + 1), repeat=2 * q):
            t = pochhammer(q * nu + 0.5, sum(js))
            for ji in js:
                t *= base[ji]
            terms.append(t)
        return math.fsum(terms)
    poly = np.array([1.0])
    for _ in range(2 * q):
        poly = np.convolve(poly, np.asarray(base))
    return math.fsum(pochhammer(q * nu + 0.5, J) * c for J, c in enumerate(poly))


def _lauricella_coeff_cj(n: int, q: int, j: int) -> float:
    """(2q+1)-variable Lauricella-A coefficient sum with terminating index -j."""
    nu = n % 2
    top = (n - nu) // 2
    base = [pochhammer((nu - n) / 2.0, ji)
            / (pochhammer(nu + 0.5, ji) * math.factorial(ji)) * (1.0 / q) ** ji
            for ji in range(top + 1)]
    last = [pochhammer(-j, jl) / (pochhammer(0.5, jl) * math.factorial(jl))
            for jl in range(j + 1)]
    terms = []
    for js in product(range(top + 1), repeat=2 * q):
        s0 = sum(js)
        f0 = 1.0
        for ji in js:
            f0 *= base[ji]
        for jl in range(j + 1):
            terms.append(pochhammer(q * nu + 0.5, s0 + jl) * f0 * last[jl])
    b = binomial((n + nu - 1) / 2.0, top)
    return pochhammer(0.5, q * nu) * b ** (2 * q) * math.fsum(terms)


def hermite_power_linearize(n: int, q: int) -> LinearizationExpansion:
    """Expansion |H_n(y)|^(2q) = sum_j d_j H_{2j}(sqrt(q) y), truncating at j = q n."""
    if n < 0 or q < 1:
        raise DomainError("need n >= 0 and q >= 1")
    nu = n % 2
    prefactor = 2.0 ** (2 * q * n) * math.factorial((n - nu) // 2) ** (2 * q) * q ** (-q * nu)
    coeffs = []
    for j in range(q * n + 1):
        cj = _lauricella_coeff_cj(n, q, j)
        dj = prefactor * ((-1.0) ** j / (2.0 ** (2 * j) * math.factorial(j))) * cj
        coeffs.append((2 * j, dj))
    return LinearizationExpansion("hermite", None, "orthogonal", math.sqrt(q),
                                  tuple(coeffs))


def laguerre_square_linearize(n: int, alpha: float) -> LinearizationExpansion:
    """[L_n^(alpha)(x)]^2 = sum_k c_k L_{2k}^(2 alpha)(2x).

    The doubled argument on the right is essential; the same-argument variant
    cannot close (the square has odd components in that basis).
    """
    if alpha <= -1.0:
        raise DomainError("alpha must exceed -1")
    coeffs = []
    lpref = gammaln(alpha + 1.0 + n) - 2 * n * math.log(2.0) - gammaln(n + 1.0)
    for k in range(n + 1):
        c = (binomial(2 * n - 2 * k, n - k)
             * math.exp(lpref + gammaln(2 * k + 1.0) - gammaln(k + 1.0)
                        - gammaln(alpha + 1.0 + k)))
        coeffs.append((2 * k, c))
    return LinearizationExpansion("laguerre", 2.0 * alpha, "orthogonal", 2.0,
                                  tuple(coeffs))


def laguerre_product_integral(s: float, alpha: float, beta: float,
                              n: int, m: int) -> float:
    """int_0^inf x^s e^-x L_n^(alpha) L_m^(beta) dx as a finite binomial sum."""
    if s <= -1.0:
        raise DomainError("s must exceed -1")
    terms = [binomial(s - alpha, n - r) * binomial(s - beta, m - r) * binomial(s + r, r)
             for r in range(min(n, m) + 1)]
    return (-1.0) ** (n + m) * math.exp(gammaln(s + 1.0)) * math.fsum(terms)


def _hyp_4F3_unit_terminating(a: Sequence[float], b: Sequence[float]) -> float:
    """Terminating 4F3 at unit argument (first numerator a[0] <= 0 integer)."""
    jmax = int(round(-a[0]))
    terms = [1.0]
    term = 1.0
    for j in range(jmax):
        numf = 1.0
        for ai in a:
            numf *= ai + j
        denf = 1.0
        for bi in b:
            denf *= bi + j
        term *= numf / (denf * (j + 1.0))
        terms.append(term)
    return math.fsum(terms)


def gegenbauer_square_linearize(n: int, lam: float, mu_next: int) -> LinearizationExpansion:
    """Dougall expansion of an orthonormal Gegenbauer square.

    [Ct_n^(lam)]^2 = sum_k b(lam, lam + mu_next, n; k) Ct_{2k}^(lam + mu_next),
    with b from the terminating 4F3(1).
    """
    if lam <= -0.5:
        raise DomainError("lambda must exceed -1/2")
    if mu_next < 0:
        raise DomainError("mu_next must be nonnegative")
    mu = float(mu_next)
    coeffs = []
    for k in range(n + 1):
        f43 = _hyp_4F3_unit_terminating(
            [k - n, k + n + 2 * lam, k + lam, k + lam + mu + 0.5],
            [2 * k + lam + mu + 1.0, k + 2 * lam, k + lam + 0.5])
        lpref = (math.log(n + lam) + gammaln(k + 0.5) + gammaln(k + lam)
                 + gammaln(k + n + 2 * lam) + gammaln(lam + mu)
                 - 0.5 * math.log(math.pi) - gammaln(1.0 + n - k)
                 - gammaln(k + lam + 0.5) - gammaln(k + 2 * lam)
                 - gammaln(2 * k + lam + mu))
        linner = 0.5 * ((1.0 - 2 * lam - 2 * mu) * math.log(2.0)
                        + gammaln(2 * k + 2 * lam + 2 * mu)
                        - math.log(2 * k + lam + mu) - gammaln(2 * k + 1.0)
                        - 2.0 * gammaln(lam + mu))
        coeffs.append((2 * k, math.exp(lpref + linner) * f43))
    return LinearizationExpansion("gegenbauer", lam + mu, "orthonormal", 1.0,
                                  tuple(coeffs))


# ---------------------------------------------------------------------------
# Bessel and 3j


def bessel_J(alpha: float, x) -> float | np.ndarray:
    """Bessel function of the first kind J_alpha(x) for x >= 0."""
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0):
        raise DomainError("bessel_J requires x >= 0")
    out = jv(alpha, xa)
    return float(out) if np.isscalar(x) else out


def wigner_3j(j1: int, j2: int, j3: int, m1: int, m2: int, m3: int) -> float:
    """Wigner 3j symbol, exact rational Racah sum (integer arguments).

    Returns 0 for selection-rule violations rather than raising.
    """
    for v in (j1, j2, j3, m1, m2, m3):
        if int(v) != v:
            raise DomainError("only integer 3j arguments are supported")
    if m1 + m2 + m3 != 0:
        return 0.0
    if j3 < abs(j1 - j2) or j3 > j1 + j2:
        return 0.0
    if abs(m1) > j1 or abs(m2) > j2 or abs(m3) > j3:
        return 0.0
    f = math.factorial
    pre = Fraction(f(j1 + j2 - j3) * f(j1 - j2 + j3) * f(-j1 + j2 + j3),
                   f(j1 + j2 + j3 + 1))
    pre *= f(j1 - m1) * f(j1 + m1) * f(j2 - m2) * f(j2 + m2) * f(j3 - m3) * f(j3 + m3)
    total = Fraction(0)
    for t in range(0, j1 + j2 + j3 + 1):
        d1 = j3 - j2 + t + m1
        d2 = j3 - j1 + t - m2
        d3 = j1 + j2 - j3 - t
        d4 = j1 - t - m1
        d5 = j2 - t + m2
        if min(d1, d2, d3, d4, d5) < 0:
            continue
        total += Fraction((-1) ** t, f(t) * f(d1) * f(d2) * f(d3) * f(d4) * f(d5))
    if total == 0:
        return 0.0
    sign = (-1) ** (j1 - j2 - m3)
    # |3j|^2 = pre * total^2 is exact rational; take the root of the exact square
    mag2 = pre * total * total
    val = math.sqrt(mag2.numerator / mag2.denominator)
    return sign * (1.0 if total > 0 else -1.0) * val


@lru_cache(maxsize=None)
def wigner_3j_cached(j1: int, j2: int, j3: int, m1: int, m2: int, m3: int) -> float:
    return wigner_3j(j1, j2, j3, m1, m2, m3)
