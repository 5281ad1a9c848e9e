"""One-dimensional law of a linear functional a.x under the perturbed density.

For a unit direction a, homogeneity of P collapses the joint characteristic
function along the ray t*a to

    cf_a(t) = exp(-t^2/2) + epsilon P(a) exp(-sigma^2 t^2 / 2) t^{2k}

whose inverse transform is the explicit density

    g_a(x) = N(x) * (1 + A(a) H_{2k}(x/sigma) exp(-x^2 (1-sigma^2)/(2 sigma^2)))

with N the standard normal density and
A(a) = (-1)^k epsilon P(a) sigma^{-(2k+1)} ... in the factored form used below.
Directions in the zero set of P (P(a) = 0) therefore have an exactly standard
normal law.  Nonzero critical points of g_a solve

    E(x) + B H_{2k+1}(x/sigma) / x = 0,
    E(x) = exp(x^2 (1/sigma^2 - 1) / 2),   B = (-1)^k epsilon P(a) sigma^{-(2k+2)}

which this module brackets on a fixed grid and polishes by bisection; the
sign pattern of the crossings classifies the law as gaussian-exact, unimodal,
or nonunimodal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError
from .hermite import hermite_coefficients, hermite_eval
from .polynomial import as_direction, eval_poly

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_SCAN_STEP = 1e-3
_BISECT_XTOL = 1e-12
_TANGENT_TOL = 1e-10


@dataclass(frozen=True)
class MarginalLaw:
    """A direction, its polynomial value P(a), and the owning spec."""

    spec: object
    direction: object
    pa: float
    theta: float | None = None


def marginal_law(spec, a, theta=None):
    """Bind a unit direction to a spec, caching P(a)."""
    a = as_direction(a)
    if a.dimension != spec.n:
        raise ArgumentError(f"direction dimension {a.dimension} != n = {spec.n}")
    pa = eval_poly(spec.P, np.asarray(a.components))
    return MarginalLaw(spec=spec, direction=a, pa=pa, theta=theta)


def marginal_cf(law, t):
    """Characteristic function of a.x; scalar or array t."""
    spec = law.spec
    ts = np.asarray(t, dtype=float)
    twok = 2 * spec.k
    value = np.exp(-0.5 * ts * ts)
    if spec.epsilon != 0.0 and law.pa != 0.0:
        value = value + (
            spec.epsilon
            * law.pa
            * np.exp(-0.5 * spec.sigma**2 * ts * ts)
            * ts**twok
        )
    return float(value) if ts.ndim == 0 else value


def _amp(law):
    # coefficient of H_{2k}(x/sigma) exp(-x^2/(2 sigma^2)) / sqrt(2 pi) in g_a
    spec = law.spec
    parity = -1.0 if spec.k % 2 else 1.0
    return parity * spec.epsilon * law.pa / spec.sigma ** (2 * spec.k + 1)


def marginal_density(law, x):
    """Density g_a of the linear functional; scalar or array x."""
    spec = law.spec
    xs = np.asarray(x, dtype=float)
    value = np.exp(-0.5 * xs * xs)
    amp = _amp(law)
    if amp != 0.0:
        twok = 2 * spec.k
        value = value + amp * hermite_eval(twok, xs / spec.sigma) * np.exp(
            -0.5 * xs * xs / spec.sigma**2
        )
    value = value / _SQRT_2PI
    return float(value) if xs.ndim == 0 else value


def marginal_density_deriv(law, x):
    """Analytic g_a'(x), using H_{2k+1}(y) = y H_{2k}(y) - H_{2k}'(y)."""
    spec = law.spec
    xs = np.asarray(x, dtype=float)
    value = -xs * np.exp(-0.5 * xs * xs)
    amp = _amp(law)
    if amp != 0.0:
        twok = 2 * spec.k
        value = value - (amp / spec.sigma) * hermite_eval(
            twok + 1, xs / spec.sigma
        ) * np.exp(-0.5 * xs * xs / spec.sigma**2)
    value = value / _SQRT_2PI
    return float(value) if xs.ndim == 0 else value


def marginal_grid(law, xs):
    """Pointwise (x, g_a(x)) pairs, CSV-ready."""
    xs = np.asarray(list(xs), dtype=float)
    if not np.all(np.isfinite(xs)):
        raise ArgumentError("grid points must be finite")
    g = marginal_density(law, xs)
    return list(zip(xs.tolist(), np.atleast_1d(g).tolist()))


@dataclass(frozen=True)
class ModalityReport:
    """Nonzero critical points of g_a (positive representatives; the law is
    even so negatives mirror them) and the resulting classification."""

    direction: tuple
    theta: float | None
    pa: float
    classification: str          # gaussian-exact | unimodal | nonunimodal
    critical_points: tuple
    g_at_critical: tuple
    g_at_zero: float
    tangential_suspect: bool

    def to_json(self):
        return {
            "theta_or_direction": self.theta if self.theta is not None
            else list(self.direction),
            "P_of_a": self.pa,
            "classification": self.classification,
            "critical_points": list(self.critical_points),
            "tangential_root_suspect": self.tangential_suspect,
        }


def _critical_fn(law):
    """F(x) with F = 0 at nonzero critical points; g' = -x exp(.) F for x>0.

    Returns (F, F0) where F0 = lim_{x->0} F(x).
    """
    spec = law.spec
    sigma = spec.sigma
    twok = 2 * spec.k
    gamma = 0.5 * (1.0 / sigma**2 - 1.0)
    B = _amp(law) / sigma  # = (-1)^k eps P(a) / sigma^{2k+2}
    # H_{2k+1}(y)/y is the even polynomial with the odd coefficients of H_{2k+1}
    odd = hermite_coefficients(twok + 1)[1::2]

    def ratio(y2):
        acc = np.zeros_like(y2)
        for c in reversed(odd):
            acc = acc * y2 + c
        return acc

    def F(x):
        xs = np.asarray(x, dtype=float)
        y2 = xs * xs / sigma**2
        return np.exp(gamma * xs * xs) + (B / sigma) * ratio(y2)

    F0 = 1.0 + (B / sigma) * odd[0]
    return F, F0


def _scan_radius(law):
    """x beyond which the exponential term provably dominates, so F > 0.

    Uses |H_{2k+1}(y)/y| <= (2k+2) max|coeff| (1+y)^{2k} and pushes past the
    radius where the ratio exponential/bound is both > 2 and increasing.
    """
    spec = law.spec
    sigma = spec.sigma
    twok = 2 * spec.k
    gamma = 0.5 * (1.0 / sigma**2 - 1.0)
    B = abs(_amp(law)) / sigma
    cmax = max(abs(c) for c in hermite_coefficients(twok + 1))
    bound_scale = (B / sigma) * (twok + 2) * cmax

    def log_ratio(x):
        return gamma * x * x - math.log(bound_scale) - twok * math.log1p(x / sigma)

    # past x1 the log-ratio increases: 2 gamma x (sigma + x) > 2k
    x1 = (-gamma * sigma + math.sqrt(gamma**2 * sigma**2 + 4.0 * gamma * spec.k)) / (
        2.0 * gamma
    )
    x = max(1.0, x1)
    while log_ratio(x) < math.log(2.0):
        x += 0.5
    return x


def critical_points(law):
    """Locate all positive critical points of g_a and classify its modality.

    Sign changes of F on a step-1e-3 grid over (0, x_max] are polished by
    bisection to 1e-12.  Zero is always critical (the law is even); it is a
    mode when g''(0) < 0, equivalently F(0) > 0.  Classification follows the
    crossing pattern: nonunimodal iff g''(0) > 0 or more than one positive
    local maximum exists.  Near-tangential dips of |F| below 1e-10 without a
    sign change are flagged, not classified.
    """
    spec = law.spec
    if spec.epsilon * law.pa == 0.0:
        return ModalityReport(
            direction=tuple(law.direction.components),
            theta=law.theta,
            pa=law.pa,
            classification="gaussian-exact",
            critical_points=(),
            g_at_critical=(),
            g_at_zero=marginal_density(law, 0.0),
            tangential_suspect=False,
        )

    F, F0 = _critical_fn(law)
    x_max = _scan_radius(law)
    grid = np.arange(_SCAN_STEP, x_max + _SCAN_STEP, _SCAN_STEP)
    values = F(grid)

    roots = []
    suspect = False
    prev_x, prev_f = 0.0, F0
    for x, f in zip(grid, values):
        if f == 0.0:
            roots.append(float(x))
        elif prev_f * f < 0.0:
            a, b, fa = prev_x, float(x), prev_f
            while b - a > _BISECT_XTOL:
                mid = 0.5 * (a + b)
                fm = float(F(mid))
                if fm == 0.0:
                    a = b = mid
                    break
                if fa * fm < 0.0:
                    b = mid
                else:
                    a, fa = mid, fm
            roots.append(0.5 * (a + b))
        prev_x, prev_f = float(x), float(f)

    # tangential dips: local minima of |F| below tolerance with no crossing
    absv = np.abs(values)
    small = np.nonzero(absv < _TANGENT_TOL)[0]
    for idx in small:
        lo = values[idx - 1] if idx > 0 else F0
        hi = values[idx + 1] if idx + 1 < len(values) else values[idx]
        if lo * hi > 0.0 and not any(abs(grid[idx] - r) < 2 * _SCAN_STEP for r in roots):
            suspect = True

    # sign of F between consecutive critical points gives the crossing
    # pattern; a negative -> positive crossing is a local maximum of g
    # (g' = -x e^{.} F for x > 0).  F stays positive beyond x_max.
    maxima = 0
    if roots:
        knots = [0.0] + roots + [x_max + 1.0]
        signs = [
            math.copysign(1.0, float(F(0.5 * (a + b))))
            for a, b in zip(knots, knots[1:])
        ]
        maxima = sum(1 for s1, s2 in zip(signs, signs[1:]) if s1 < 0.0 < s2)

    nonunimodal = (F0 < 0.0) or (maxima > 1)
    return ModalityReport(
        direction=tuple(law.direction.components),
        theta=law.theta,
        pa=law.pa,
        classification="nonunimodal" if nonunimodal else "unimodal",
        critical_points=tuple(roots),
        g_at_critical=tuple(float(marginal_density(law, r)) for r in roots),
        g_at_zero=marginal_density(law, 0.0),
        tangential_suspect=suspect,
    )
