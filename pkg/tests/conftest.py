import math

import pytest

from gaussmarg import make_spec, reference_spec, vandermonde_antisym

REFERENCE_SIGMA = 2.0 ** -0.5


@pytest.fixture(scope="session")
def ref_spec():
    """Reference scenario at the boundary eta = e^2/4."""
    return reference_spec()


@pytest.fixture(scope="session")
def ref_spec_neg():
    return reference_spec(eta=-math.exp(2.0) / 4.0)


@pytest.fixture(scope="session")
def gaussian_spec():
    """epsilon = 0 with the reference polynomial: the standard gaussian."""
    return reference_spec(eta=0.0)


@pytest.fixture(scope="session")
def vand4_spec():
    """n = 4 odd-Vandermonde spec at half the admissible strength."""
    P = vandermonde_antisym(4)
    probe = make_spec(0.0, REFERENCE_SIGMA, P)
    return make_spec(0.5 / probe.bound_K, REFERENCE_SIGMA, P)


@pytest.fixture(scope="session")
def generic_spec():
    """A spec whose polynomial is not the Vandermonde family, so evaluation
    goes through the expanded renormalization rather than the determinant."""
    import numpy as np

    from gaussmarg import Direction, from_subspace_normals

    rng = np.random.default_rng(2025)
    normals = [Direction(rng.standard_normal(2)) for _ in range(3)]
    P = from_subspace_normals(normals)  # odd list -> degree 4
    probe = make_spec(0.0, 0.6, P)
    return make_spec(0.8 / probe.bound_K, 0.6, P)
