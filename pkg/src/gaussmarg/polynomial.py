"""Sparse real multivariate polynomials and the two hyperplane-zero constructions.

A polynomial is stored as a map from exponent tuples to nonzero float
coefficients.  Terms are always iterated in lexicographic exponent order, so
evaluation is deterministic (bit-identical between calls) and serialization
is canonical.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ArgumentError, CapacityError

# Expanding the odd-Vandermonde product beyond n = 4 grows super-factorially;
# larger n must go through the determinant evaluation path instead.
VANDERMONDE_EXPANSION_CAP = 4


class Direction:
    """Unit vector a defining the linear functional x -> a.x.

    The constructor normalizes, so ``Direction((3, 4))`` has components
    (0.6, 0.8).  A zero or non-finite input is rejected.
    """

    __slots__ = ("components",)

    def __init__(self, components):
        vec = np.asarray(components, dtype=float)
        if vec.ndim != 1 or vec.size == 0:
            raise ArgumentError("direction must be a nonempty 1-d vector")
        if not np.all(np.isfinite(vec)):
            raise ArgumentError("direction components must be finite")
        norm = math.sqrt(float(vec @ vec))
        if norm == 0.0:
            raise ArgumentError("direction must be nonzero")
        self.components = tuple(float(c) / norm for c in vec)

    @property
    def dimension(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other):
        return isinstance(other, Direction) and self.components == other.components

    def __repr__(self):
        return f"Direction({list(self.components)!r})"


def as_direction(a):
    """Coerce a vector-like or Direction into a Direction."""
    return a if isinstance(a, Direction) else Direction(a)


class MultiPoly:
    """Sparse polynomial  sum_m  a_m  t_1^{m_1} ... t_n^{m_n}.

    `terms` maps exponent tuples (length = `dimension`) to nonzero float
    coefficients; zero coefficients are dropped on construction.  If every
    stored term has the same total degree, `homogeneous_degree` is set to it
    (the zero polynomial has no degree).
    """

    __slots__ = ("dimension", "terms", "homogeneous_degree", "_sorted")

    def __init__(self, dimension, terms):
        dimension = int(dimension)
        if dimension < 1:
            raise ArgumentError("polynomial dimension must be >= 1")
        clean = {}
        for exps, coeff in terms.items():
            exps = tuple(int(m) for m in exps)
            if len(exps) != dimension:
                raise ArgumentError(
                    f"exponent vector {exps} does not match dimension {dimension}"
                )
            if any(m < 0 for m in exps):
                raise ArgumentError(f"negative exponent in {exps}")
            coeff = float(coeff)
            if not math.isfinite(coeff):
                raise ArgumentError("coefficients must be finite")
            if coeff != 0.0:
                clean[exps] = coeff
        self.dimension = dimension
        self.terms = clean
        self._sorted = tuple(sorted(clean.items()))
        degrees = {sum(e) for e in clean}
        self.homogeneous_degree = degrees.pop() if len(degrees) == 1 else None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dimension):
        return cls(dimension, {})

    @classmethod
    def one(cls, dimension):
        return cls(dimension, {(0,) * dimension: 1.0})

    @classmethod
    def variable(cls, dimension, index):
        exps = [0] * dimension
        exps[index] = 1
        return cls(dimension, {tuple(exps): 1.0})

    @classmethod
    def linear_form(cls, coeffs):
        """Polynomial sum_r c_r t_r from a coefficient vector."""
        coeffs = list(coeffs)
        n = len(coeffs)
        terms = {}
        for r, c in enumerate(coeffs):
            if c != 0.0:
                exps = [0] * n
                exps[r] = 1
                terms[tuple(exps)] = float(c)
        return cls(n, terms)

    # -- basics ------------------------------------------------------------

    def sorted_terms(self):
        """Terms as ((exponents, coeff), ...) in lexicographic exponent order."""
        return self._sorted

    def is_zero(self):
        return not self.terms

    def degree(self):
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.dimension == other.dimension
            and self.terms == other.terms
        )

    def __repr__(self):
        body = " + ".join(f"{c}*t^{list(e)}" for e, c in self._sorted) or "0"
        return f"MultiPoly(n={self.dimension}: {body})"

    # -- arithmetic (used by the constructions; not a general algebra) ------

    def __add__(self, other):
        if self.dimension != other.dimension:
            raise ArgumentError("dimension mismatch in polynomial addition")
        acc = dict(self.terms)
        for exps, coeff in other.sorted_terms():
            acc[exps] = acc.get(exps, 0.0) + coeff
        return MultiPoly(self.dimension, acc)

    def __neg__(self):
        return MultiPoly(self.dimension, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return self.scale(other)
        if self.dimension != other.dimension:
            raise ArgumentError("dimension mismatch in polynomial product")
        acc = {}
        for e1, c1 in self.sorted_terms():
            for e2, c2 in other.sorted_terms():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0.0) + c1 * c2
        return MultiPoly(self.dimension, acc)

    __rmul__ = __mul__

    def scale(self, c):
        return MultiPoly(self.dimension, {e: c * v for e, v in self.terms.items()})

    # -- serialization -------------------------------------------------------

    def to_json(self):
        """Canonical JSON form: terms sorted lexicographically by exponents."""
        return {
            "dimension": self.dimension,
            "terms": [
                {"exponents": list(e), "coeff": c} for e, c in self._sorted
            ],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            dim = obj["dimension"]
            terms = {tuple(t["exponents"]): t["coeff"] for t in obj["terms"]}
        except (KeyError, TypeError) as exc:
            raise ArgumentError(f"malformed polynomial JSON: {exc}") from exc
        return cls(dim, terms)


def eval_poly(P, t):
    """Evaluate P at t (a length-n vector, or an array of shape (..., n)).

    Terms are accumulated in lexicographic exponent order, so repeated
    evaluation at the same point is bit-identical.
    """
    pts = np.asarray(t, dtype=float)
    if pts.ndim == 0 or pts.shape[-1] != P.dimension:
        raise ArgumentError(
            f"point of dimension {pts.shape[-1] if pts.ndim else 0} "
            f"!= polynomial dimension {P.dimension}"
        )
    scalar = pts.ndim == 1
    acc = np.zeros(pts.shape[:-1])
    for exps, coeff in P.sorted_terms():
        term = np.full(pts.shape[:-1], coeff)
        for r, m in enumerate(exps):
            if m:
                term = term * pts[..., r] ** m
        acc = acc + term
    return float(acc) if scalar else acc


def zero_set_member(P, t, tol=1e-12):
    """True iff P(t) vanishes relative to the magnitude of its largest term.

    The test is |P(t)| <= tol * (1 + max_m |a_m| prod_r |t_r|^{m_r}), which
    stays meaningful for high-degree polynomials at large |t| where an
    absolute tolerance would not.
    """
    if tol <= 0:
        raise ArgumentError("tol must be positive")
    pts = np.asarray(t, dtype=float)
    if pts.ndim != 1 or pts.shape[0] != P.dimension:
        raise ArgumentError("zero_set_member expects a single point of matching dimension")
    value = 0.0
    largest = 0.0
    for exps, coeff in P.sorted_terms():
        term = coeff
        for r, m in enumerate(exps):
            if m:
                term *= pts[r] ** m
        value += term
        largest = max(largest, abs(term))
    return abs(value) <= tol * (1.0 + largest)


def from_subspace_normals(normals):
    """Product of the linear forms a.t over the given unit normals.

    Each normal a defines the hyperplane a-perp, and the product polynomial
    vanishes on the union of those hyperplanes.  An odd list is padded by
    repeating the last normal once so the total degree is even; the repeat
    leaves the zero set unchanged.
    """
    normals = [as_direction(a) for a in normals]
    if not normals:
        raise ArgumentError("need at least one subspace normal")
    dims = {a.dimension for a in normals}
    if len(dims) != 1:
        raise ArgumentError(f"normals of mixed dimensions {sorted(dims)}")
    n = dims.pop()
    if n < 2:
        raise ArgumentError("ambient dimension must be >= 2")
    if len(normals) % 2:
        normals = normals + [normals[-1]]
    poly = MultiPoly.one(n)
    for a in normals:
        poly = poly * MultiPoly.linear_form(a.components)
    return poly


def vandermonde_antisym(n):
    """The odd antisymmetric polynomial t_1...t_n prod_{i<j} (t_i^2 - t_j^2).

    Homogeneous of degree n*n and antisymmetric under any transposition of
    the variables, so it vanishes on every hyperplane t_i = +-t_j and t_i = 0.
    Only defined for even n; the expansion is refused beyond n = 4 (the term
    count grows super-factorially).
    """
    if n < 2 or n % 2:
        raise ArgumentError("n must be even and >= 2")
    if n > VANDERMONDE_EXPANSION_CAP:
        raise CapacityError(
            f"expanded form limited to n <= {VANDERMONDE_EXPANSION_CAP}; "
            "use the determinant evaluator for larger n"
        )
    poly = MultiPoly.one(n)
    for r in range(n):
        poly = poly * MultiPoly.variable(n, r)
    for i in range(n):
        ti2 = MultiPoly(n, {tuple(2 if r == i else 0 for r in range(n)): 1.0})
        for j in range(i + 1, n):
            tj2 = MultiPoly(n, {tuple(2 if r == j else 0 for r in range(n)): 1.0})
            poly = poly * (ti2 - tj2)
    return poly
