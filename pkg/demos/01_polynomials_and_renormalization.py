"""Build perturbation polynomials and look at their Hermite renormalization.

The whole construction starts from a homogeneous polynomial of even degree
that vanishes on a prescribed union of hyperplanes.  Two builders exist:
a product of linear forms (one per hyperplane normal) and the antisymmetric
odd-Vandermonde polynomial, which vanishes on every t_i = +-t_j and t_i = 0.
"""

import numpy as np

from gaussmarg import (
    Direction,
    eval_poly,
    from_subspace_normals,
    renorm_vandermonde_eval,
    renormalize,
    vandermonde_antisym,
)

# product of linear forms: hyperplanes x2 = 0, x1 = 0, x1 = x2
normals = [Direction((0.0, 1.0)), Direction((1.0, 0.0)), Direction((1.0, -1.0))]
P = from_subspace_normals(normals)
print("product polynomial (odd list repeats the last normal):")
print(" ", P)
print("  vanishes on each hyperplane, e.g. P(3, 3) =", eval_poly(P, [3.0, 3.0]))

# the antisymmetric construction for n = 2 and its renormalization
V = vandermonde_antisym(2)
print("\nantisymmetric quartic:", V)
R = renormalize(V)
print("renormalized        :", R)
print("(the Hermite corrections cancel pairwise for this family)")

# renormalization does real work on non-antisymmetric input
from gaussmarg import MultiPoly

Q = MultiPoly(2, {(2, 0): 1.0})
print("\nrenormalize(t1^2)   :", renormalize(Q), " (t1^2 -> x1^2 - 1)")

# for n = 4 the expanded form exists, but the determinant path evaluates the
# renormalization without it -- compare the two on a random point
rng = np.random.default_rng(0)
x = rng.standard_normal(4)
V4 = renormalize(vandermonde_antisym(4))
print("\nn = 4 agreement at a random point:")
print("  expanded   :", eval_poly(V4, x))
print("  determinant:", renorm_vandermonde_eval(4, x))
