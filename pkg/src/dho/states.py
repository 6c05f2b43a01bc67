"""Oscillator state model and probability densities.

Hyperspherical states carry (n_r, mu_1 >= ... >= |mu_{D-1}|); Cartesian states
carry per-axis degrees (n_1..n_D).  Radial densities are returned WITHOUT the
r^(D-1) Jacobian: every integral in this package writes the Jacobian
explicitly.  The Cartesian Gaussian width parameter equals omega (see README
for the discrepancy note on the published exponent).  Densities are assembled
in log space so highly excited states do not overflow.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import gammaln

from . import specfun
from .errors import DomainError, ParseError
from .specfun import PolySpec


class Space(Enum):
    POSITION = "position"
    MOMENTUM = "momentum"


@dataclass(frozen=True)
class OscillatorSpec:
    """Potential strength omega and dimensionality D (atomic units)."""

    omega: float
    dim: int

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError("omega must be positive")
        if self.dim < 1 or int(self.dim) != self.dim:
            raise DomainError("dim must be an integer >= 1")


@dataclass(frozen=True)
class HyperState:
    """Hyperspherical state (n_r, mu); requires D >= 2.

    mu has D-1 entries with mu_1 >= mu_2 >= ... >= |mu_{D-1}|; only the last
    entry may be negative.
    """

    spec: OscillatorSpec
    n_r: int
    mu: tuple[int, ...]

    def __post_init__(self):
        D = self.spec.dim
        if D < 2:
            raise DomainError("hyperspherical states require dim >= 2")
        if self.n_r < 0 or int(self.n_r) != self.n_r:
            raise DomainError("n_r must be a nonnegative integer")
        mu = tuple(int(v) for v in self.mu)
        object.__setattr__(self, "mu", mu)
        if len(mu) != D - 1:
            raise DomainError(f"mu must have D-1 = {D - 1} entries")
        if D >= 3:
            if any(v < 0 for v in mu[:-1]):
                raise DomainError("only the last mu entry may be negative")
            chain = list(mu[:-1]) + [abs(mu[-1])]
            if any(chain[i] < chain[i + 1] for i in range(len(chain) - 1)):
                raise DomainError("mu must be non-increasing down to |m|")

    @property
    def l(self) -> int:
        # for D = 2 the single angular label is m; radial formulas use |m|
        return self.mu[0] if self.spec.dim >= 3 else abs(self.mu[0])

    @property
    def m(self) -> int:
        return self.mu[-1]

    @property
    def n(self) -> int:
        return 2 * self.n_r + self.l

    @property
    def eta(self) -> float:
        return self.n + (self.spec.dim - 3) / 2.0

    @property
    def big_l(self) -> float:
        return self.l + (self.spec.dim - 3) / 2.0

    @property
    def alpha(self) -> float:
        return self.l + self.spec.dim / 2.0 - 1.0


@dataclass(frozen=True)
class CartesianState:
    """Cartesian state (n_1..n_D); the only state type for D = 1."""

    spec: OscillatorSpec
    n: tuple[int, ...]

    def __post_init__(self):
        n = tuple(int(v) for v in self.n)
        object.__setattr__(self, "n", n)
        if len(n) != self.spec.dim:
            raise DomainError("n must have one entry per dimension")
        if any(v < 0 for v in n):
            raise DomainError("quantum numbers must be nonnegative")

    @property
    def total(self) -> int:
        return sum(self.n)

    @property
    def odd_count(self) -> int:
        return sum(v % 2 for v in self.n)


State = HyperState | CartesianState


def energy(state: State) -> float:
    """(N + D/2) omega, or equivalently (2 n_r + l + D/2) omega."""
    spec = state.spec
    if isinstance(state, CartesianState):
        return (state.total + spec.dim / 2.0) * spec.omega
    return (2 * state.n_r + state.l + spec.dim / 2.0) * spec.omega


# ---------------------------------------------------------------------------
# densities


def _radial_width(state: HyperState, space: Space) -> float:
    """Scale carrying the omega dependence: x = width * r^2 inside the density."""
    omega = state.spec.omega
    return omega if space is Space.POSITION else 1.0 / omega


def log_radial_density(state: HyperState, space: Space, r) -> np.ndarray:
    """log of the radial density factor (Jacobian r^(D-1) not included)."""
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r < 0):
        raise DomainError("radius must be nonnegative")
    D = state.spec.dim
    w = _radial_width(state, space)
    x = w * r * r
    spec = PolySpec("laguerre", state.n_r, state.alpha, "orthonormal")
    m, s = specfun.eval_poly_scaled(spec, x)
    with np.errstate(divide="ignore"):
        log_l2 = 2.0 * (np.log(np.abs(m)) + s)
        log_x = np.where(x > 0, np.log(np.where(x > 0, x, 1.0)), -np.inf)
    out = math.log(2.0) + (D / 2.0) * math.log(w) + state.l * log_x - x + log_l2
    if state.l == 0:
        out = np.where(x > 0, out, math.log(2.0) + (D / 2.0) * math.log(w) + log_l2)
    return out


def radial_density(state: HyperState, space: Space, r):
    """Radial factor of the density at radius r (no r^(D-1) Jacobian)."""
    scalar = np.isscalar(r)
    out = np.exp(log_radial_density(state, space, r))
    if state.l > 0:
        out = np.where(np.atleast_1d(np.asarray(r, float)) > 0, out, 0.0)
    return float(out[0]) if scalar else out


def angular_weight_exponent(state: HyperState, j: int) -> float:
    """alpha_j = (D - j - 1)/2, the solid-angle weight exponent for axis j."""
    D = state.spec.dim
    if not 1 <= j <= D - 2:
        raise DomainError(f"angular index must lie in 1..{D - 2}")
    return (D - j - 1) / 2.0


def _mu_abs(state: HyperState, idx: int) -> int:
    """mu_idx with the sign of the last component dropped (1-based idx)."""
    v = state.mu[idx - 1]
    return abs(v) if idx == len(state.mu) else v


def angular_density_factor(state: HyperState, j: int, x):
    """j-th one-dimensional factor of |Y|^2: [Ct^(a_j+mu_{j+1})_{mu_j-mu_{j+1}}]^2 (1-x^2)^mu_{j+1}.

    The factor integrates to one against (1-x^2)^(alpha_j - 1/2) dx; the
    product over j times 1/(2 pi) is the full angular density.
    """
    aj = angular_weight_exponent(state, j)
    mj = _mu_abs(state, j)
    mj1 = _mu_abs(state, j + 1)
    deg = mj - mj1
    spec = PolySpec("gegenbauer", deg, aj + mj1, "orthonormal")
    scalar = np.isscalar(x)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    val = specfun.eval_poly(spec, xa) ** 2 * (1.0 - xa * xa) ** mj1
    return float(val[0]) if scalar else val


def angular_factor_params(state: HyperState, j: int) -> tuple[float, int, int]:
    """(alpha_j, degree mu_j - mu_{j+1}, exponent mu_{j+1}) for factor j."""
    aj = angular_weight_exponent(state, j)
    mj1 = _mu_abs(state, j + 1)
    return aj, _mu_abs(state, j) - mj1, mj1


def _cartesian_width(state: CartesianState, space: Space) -> float:
    omega = state.spec.omega
    return omega if space is Space.POSITION else 1.0 / omega


def log_cartesian_axis_density(state: CartesianState, i: int, space: Space, x):
    """log of the 1-D density along axis i (0-based)."""
    w = _cartesian_width(state, space)
    n = state.n[i]
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    t = math.sqrt(w) * xa
    m, s = specfun.eval_poly_scaled(PolySpec("hermite", n, None, "orthonormal"), t)
    with np.errstate(divide="ignore"):
        log_h2 = 2.0 * (np.log(np.abs(m)) + s)
    return 0.5 * math.log(w) - t * t + log_h2


def cartesian_axis_density(state: CartesianState, i: int, space: Space, x):
    scalar = np.isscalar(x)
    out = np.exp(log_cartesian_axis_density(state, i, space, x))
    return float(out[0]) if scalar else out


def cartesian_density(state: CartesianState, space: Space, x) -> float:
    """Full product density at the point x (length-D vector)."""
    xa = np.asarray(x, dtype=float)
    if xa.shape != (state.spec.dim,):
        raise DomainError("point must have one coordinate per dimension")
    tot = 0.0
    for i in range(state.spec.dim):
        tot += float(log_cartesian_axis_density(state, i, space, xa[i])[0])
    return math.exp(tot)


# ---------------------------------------------------------------------------
# serialization (exact wire format shared with the CLI)


def state_to_dict(state: State) -> dict:
    if isinstance(state, HyperState):
        return {"kind": "hyper", "D": state.spec.dim, "omega": state.spec.omega,
                "nr": state.n_r, "mu": list(state.mu)}
    return {"kind": "cartesian", "omega": state.spec.omega, "n": list(state.n)}


def state_from_dict(data: dict) -> State:
    try:
        kind = data["kind"]
    except (TypeError, KeyError) as exc:
        raise ParseError("state object needs a 'kind' field") from exc
    try:
        if kind == "hyper":
            spec = OscillatorSpec(float(data["omega"]), int(data["D"]))
            return HyperState(spec, int(data["nr"]), tuple(data["mu"]))
        if kind == "cartesian":
            n = tuple(int(v) for v in data["n"])
            spec = OscillatorSpec(float(data["omega"]), len(n))
            return CartesianState(spec, n)
    except DomainError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed {kind!r} state: {exc}") from exc
    raise ParseError(f"unknown state kind {kind!r}")


def parse_state(text: str) -> State:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"state is not valid JSON: {exc}") from exc
    return state_from_dict(data)
