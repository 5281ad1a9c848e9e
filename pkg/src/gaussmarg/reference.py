"""Built-in two-dimensional reference scenario.

n = 2, sigma = 2^{-1/2}, P = t1 t2 (t1^2 - t2^2).  In polar coordinates the
bound objective becomes 8 (r^4/4)|sin 4 theta| exp(-r^2/4), maximized at
r^2 = 8, so the validity bound has the closed form K = 128 / e^2 and
|epsilon| <= e^2 / 128.

Expanding the density shows the perturbation enters as
eta * (x1^3 x2 - x2^3 x1) exp(-|x|^2/2) with eta = 32 epsilon, which is the
more convenient knob: the admissible range is |eta| <= e^2 / 4, and the
eta-form is what the `--eta` flag feeds.
"""

from __future__ import annotations

import math

from .density import make_spec
from .errors import ArgumentError
from .polynomial import vandermonde_antisym

REFERENCE_SIGMA = 2.0 ** -0.5
ETA_SCALE = 32.0


def reference_bound_exact():
    """Closed-form validity bound of the reference scenario: 128 / e^2."""
    return 128.0 * math.exp(-2.0)


def reference_eta_max():
    """Largest admissible |eta|: e^2 / 4."""
    return math.exp(2.0) / 4.0


def reference_spec(eta=None, epsilon=None):
    """The reference DensitySpec; defaults to the boundary eta = e^2 / 4."""
    if eta is not None and epsilon is not None:
        raise ArgumentError("give eta or epsilon, not both")
    if epsilon is None:
        eta = reference_eta_max() if eta is None else float(eta)
        epsilon = eta / ETA_SCALE
    return make_spec(epsilon, REFERENCE_SIGMA, vandermonde_antisym(2))
