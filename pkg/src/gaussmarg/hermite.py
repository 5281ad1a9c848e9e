"""Probabilists' Hermite polynomials and Hermite renormalization of polynomials.

Everything here uses the probabilists' convention: H_0 = 1, H_1(x) = x and
H_{m+1}(x) = x H_m(x) - m H_{m-1}(x), the family that is monic and orthogonal
for the standard normal weight.  This is NOT the physicists' family; mixing
the two silently introduces sqrt(2) factors, so no scipy/numpy "hermite"
helpers appear in the evaluation paths.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from .errors import ArgumentError, CapacityError
from .polynomial import MultiPoly

HERMITE_CAP = 128


def hermite_eval(m, x):
    """H_m(x) by the upward three-term recurrence.

    `x` may be a scalar or array; the recurrence (rather than an expanded
    coefficient vector) keeps the evaluation stable at moderate m.
    """
    m = int(m)
    if m < 0:
        raise ArgumentError("order must be non-negative")
    if m > HERMITE_CAP:
        raise CapacityError(f"order {m} above cap {HERMITE_CAP}")
    xs = np.asarray(x, dtype=float)
    h_prev = np.ones_like(xs)
    if m == 0:
        return float(h_prev) if xs.ndim == 0 else h_prev
    h = xs.copy()
    for j in range(1, m):
        h_prev, h = h, xs * h - j * h_prev
    return float(h) if xs.ndim == 0 else h


@functools.lru_cache(maxsize=None)
def hermite_coefficients(m):
    """Monomial coefficients of H_m, ascending powers, as exact integers."""
    if m < 0:
        raise ArgumentError("order must be non-negative")
    if m > HERMITE_CAP:
        raise CapacityError(f"order {m} above cap {HERMITE_CAP}")
    prev = (1,)
    if m == 0:
        return prev
    cur = (0, 1)
    for j in range(1, m):
        shifted = (0,) + cur                       # x * H_j
        damped = tuple(-j * c for c in prev)       # -j * H_{j-1}
        nxt = tuple(
            (shifted[i] if i < len(shifted) else 0)
            + (damped[i] if i < len(damped) else 0)
            for i in range(j + 2)
        )
        prev, cur = cur, nxt
    return cur


def renormalize(P):
    """Replace each monomial t_1^{m_1}...t_n^{m_n} of P by H_{m_1}(x_1)...H_{m_n}(x_n).

    The substitution uses the exact integer coefficient tables of H_m and
    re-collects terms, so cancellations between monomials are exact.  The
    result has the same total degree as P but is generally not homogeneous.
    """
    if P.is_zero():
        raise ArgumentError("cannot renormalize the zero polynomial")
    acc = {}
    for exps, coeff in P.sorted_terms():
        tables = [
            [(j, c) for j, c in enumerate(hermite_coefficients(m)) if c]
            for m in exps
        ]
        for combo in itertools.product(*tables):
            target = tuple(j for j, _ in combo)
            value = coeff
            for _, c in combo:
                value *= c
            acc[target] = acc.get(target, 0.0) + value
    return MultiPoly(P.dimension, acc)


def renorm_vandermonde_eval(n, x):
    """Hermite renormalization of the degree-n^2 antisymmetric construction,
    evaluated as the n x n determinant with rows H_1, H_3, ..., H_{2n-1}.

    `x` may be a single length-n point or an array of shape (..., n).  The
    determinant goes through LU with partial pivoting, so the value is
    available even where the expanded polynomial is refused (n > 4).  The
    leading sign converts the determinant's row orientation to the
    (t_i^2 - t_j^2), i < j, factor ordering used by vandermonde_antisym.
    """
    n = int(n)
    if n < 2 or n % 2:
        raise ArgumentError("n must be even and >= 2")
    pts = np.asarray(x, dtype=float)
    if pts.ndim == 0 or pts.shape[-1] != n:
        raise ArgumentError(f"point dimension does not match n = {n}")
    rows = [hermite_eval(2 * r + 1, pts) for r in range(n)]
    mat = np.stack(rows, axis=-2)
    sign = -1.0 if (n * (n - 1) // 2) % 2 else 1.0
    det = sign * np.linalg.det(mat)
    return float(det) if pts.ndim == 1 else det
