import math

import mpmath
import numpy as np
import pytest
from numpy.polynomial import hermite_e

from gaussmarg import (
    ArgumentError,
    CapacityError,
    MultiPoly,
    eval_poly,
    hermite_eval,
    renorm_vandermonde_eval,
    renormalize,
    vandermonde_antisym,
)
from gaussmarg.hermite import HERMITE_CAP, hermite_coefficients


def test_hermite_examples():
    assert hermite_eval(3, 2.0) == 2.0          # x^3 - 3x at 2
    assert hermite_eval(0, -17.3) == 1.0
    assert hermite_eval(4, 0.0) == 3.0          # x^4 - 6x^2 + 3 at 0
    assert hermite_eval(1, 0.25) == 0.25


def test_hermite_recurrence_consistency():
    xs = np.linspace(-5.0, 5.0, 41)
    for m in range(1, 21):
        lhs = hermite_eval(m + 1, xs)
        rhs = xs * hermite_eval(m, xs) - m * hermite_eval(m - 1, xs)
        assert np.allclose(lhs, rhs, rtol=1e-9, atol=1e-9)


def test_hermite_coefficients_against_numpy():
    # numpy's hermite_e module is the same probabilists' family
    for m in range(0, 21):
        mine = np.array(hermite_coefficients(m), dtype=float)
        basis = np.zeros(m + 1)
        basis[m] = 1.0
        theirs = hermite_e.herme2poly(basis)
        assert np.array_equal(mine, theirs)


def test_hermite_monic_and_degree():
    for m in range(0, 30):
        coeffs = hermite_coefficients(m)
        assert len(coeffs) == m + 1
        assert coeffs[-1] == 1


def test_hermite_cap():
    hermite_eval(HERMITE_CAP, 0.5)
    with pytest.raises(CapacityError):
        hermite_eval(HERMITE_CAP + 1, 0.5)
    with pytest.raises(ArgumentError):
        hermite_eval(-1, 0.5)


def test_generating_definition_by_finite_differences():
    # m-th central difference of the normal density in 50-digit arithmetic,
    # so the only error left is the O(h^2) truncation term
    mpmath.mp.dps = 50
    norm = lambda x: mpmath.exp(-x * x / 2) / mpmath.sqrt(2 * mpmath.pi)
    h = mpmath.mpf("1e-3")
    for x in (-1.0, 0.0, 0.7, 2.0):
        for m in range(0, 7):
            acc = mpmath.mpf(0)
            for j in range(m + 1):
                acc += (-1) ** j * mpmath.binomial(m, j) * norm(
                    mpmath.mpf(x) + (mpmath.mpf(m) / 2 - j) * h
                )
            deriv = float(acc / h ** m)
            expected = (-1.0) ** m * hermite_eval(m, x) * float(norm(mpmath.mpf(x)))
            assert deriv == pytest.approx(expected, abs=1e-4)


def test_gaussian_orthogonality():
    nodes, weights = hermite_e.hermegauss(32)  # weight exp(-x^2/2)
    inv = 1.0 / math.sqrt(2.0 * math.pi)
    for j in range(9):
        for k in range(9):
            if j == k:
                continue
            integral = inv * np.sum(
                weights * hermite_eval(j, nodes) * hermite_eval(k, nodes)
            )
            assert abs(integral) <= 1e-8


def test_renormalize_examples():
    # the degree-3 corrections cancel pairwise for the antisymmetric quartic
    R = renormalize(vandermonde_antisym(2))
    assert R.terms == {(3, 1): 1.0, (1, 3): -1.0}

    assert renormalize(MultiPoly(1, {(1,): 1.0})).terms == {(1,): 1.0}
    assert renormalize(MultiPoly(2, {(2, 0): 1.0})).terms == {(2, 0): 1.0, (0, 0): -1.0}


def test_renormalize_preserves_degree_loses_homogeneity():
    P = MultiPoly(2, {(4, 0): 1.0, (2, 2): 1.0})
    R = renormalize(P)
    assert R.degree() == 4
    assert R.homogeneous_degree is None


def test_renormalize_rejects_zero():
    with pytest.raises(ArgumentError):
        renormalize(MultiPoly.zero(2))


def test_renormalize_linearity_exact():
    # dyadic multipliers and integer coefficients keep every float op exact
    P = MultiPoly(2, {(3, 1): 2.0, (2, 2): -4.0})
    Q = MultiPoly(2, {(4, 0): 1.0, (1, 1): 3.0})
    alpha, beta = 0.5, 2.0
    combo = renormalize(P.scale(alpha) + Q.scale(beta))
    split = renormalize(P).scale(alpha) + renormalize(Q).scale(beta)
    assert combo.terms == split.terms


def test_renormalize_against_quadrature_projection():
    # independent check: coefficients of :P: reproduce P's gaussian moments,
    # i.e. E[P(x + iy)] ... simpler: evaluate both sides of the defining
    # substitution on one monomial via explicit H tables
    P = MultiPoly(2, {(2, 1): 1.5})
    R = renormalize(P)
    # H_2(x) H_1(y) * 1.5 = 1.5 (x^2 - 1) y
    assert R.terms == {(2, 1): 1.5, (0, 1): -1.5}


@pytest.mark.parametrize("n", [2, 4])
def test_determinant_matches_expansion(n):
    R = renormalize(vandermonde_antisym(n))
    rng = np.random.default_rng(23)
    pts = rng.standard_normal((100, n))
    det_vals = renorm_vandermonde_eval(n, pts)
    exp_vals = eval_poly(R, pts)
    assert np.allclose(det_vals, exp_vals, rtol=1e-8, atol=1e-8)


def test_determinant_examples():
    assert renorm_vandermonde_eval(2, [1.0, 1.0]) == 0.0
    # H_3(2) H_1(1) - H_1(2) H_3(1) = 2*1 - 2*(-2) = 6
    assert renorm_vandermonde_eval(2, [2.0, 1.0]) == pytest.approx(6.0, rel=1e-12)
    assert renorm_vandermonde_eval(4, [0.3, 1.1, 1.1, -0.4]) == pytest.approx(0.0, abs=1e-12)


def test_determinant_rejects_odd_n():
    with pytest.raises(ArgumentError):
        renorm_vandermonde_eval(3, [1.0, 2.0, 3.0])
    with pytest.raises(ArgumentError):
        renorm_vandermonde_eval(2, [1.0, 2.0, 3.0])
