"""Compute the validity bound K and inspect its certificate.

K is the supremum of |:P:(x)| sigma^{-(n+2k)} exp(-|x|^2 (1-sigma^2)/2); the
perturbed transform is a genuine probability density exactly for
|epsilon| <= 1/K.  For the built-in reference polynomial the supremum has
the closed form 128/e^2, which makes a nice end-to-end check of the
optimizer (outer-radius argument + coarse scan + simplex refinement).
"""

import math

import numpy as np

from gaussmarg import bound_K, reference_bound_exact, vandermonde_antisym

sigma = 2.0 ** -0.5
P = vandermonde_antisym(2)
K, cert = bound_K(sigma, P)

print(f"numeric  K = {K:.12f}")
print(f"analytic K = {reference_bound_exact():.12f}   (= 128/e^2)")
print(f"admissible |epsilon| <= {1.0 / K:.6f}")
print()
print("certificate:")
print(f"  argmax          = {np.round(cert.argmax, 6)}")
print(f"  |argmax|^2      = {sum(v * v for v in cert.argmax):.6f}   (closed form: 8)")
print(f"  search radius   = {cert.search_radius:.3f}")
print(f"  grid resolution = {cert.grid_resolution:.4f}")

# scaling sanity: doubling the polynomial doubles the bound
K2, _ = bound_K(sigma, P.scale(2.0))
print(f"\nbound of 2P = {K2:.6f} = 2K within {abs(K2 - 2 * K):.2e}")

# a second sigma: smaller sigma decays the perturbation harder -> larger K
for s in (0.5, 0.6, 0.8):
    Ks, _ = bound_K(s, P)
    print(f"sigma = {s}: K = {Ks:12.4f}, |epsilon| <= {1.0 / Ks:.2e}")
