"""Nongaussian densities on R^n whose marginals on prescribed hyperplane
directions are exactly gaussian, built by perturbing the standard gaussian
characteristic function with a homogeneous polynomial of even degree.

Hermite convention: probabilists' polynomials (monic, orthogonal for the
standard normal weight) throughout.
"""

from .density import (
    BoundCertificate,
    DensitySpec,
    bound_K,
    cf_phi,
    density_f,
    make_spec,
    perturbation_factor,
    quadrature_mass,
    spec_from_json,
    spec_to_json_str,
)
from .errors import (
    ArgumentError,
    CapacityError,
    GaussMargError,
    PreconditionError,
    ValidityError,
)
from .hermite import hermite_eval, renorm_vandermonde_eval, renormalize
from .marginals import (
    MarginalLaw,
    ModalityReport,
    critical_points,
    marginal_cf,
    marginal_density,
    marginal_density_deriv,
    marginal_grid,
    marginal_law,
)
from .polynomial import (
    Direction,
    MultiPoly,
    eval_poly,
    from_subspace_normals,
    vandermonde_antisym,
    zero_set_member,
)
from .reference import reference_bound_exact, reference_eta_max, reference_spec
from .verify import (
    GofResult,
    SampleBatch,
    kolmogorov_pvalue,
    ks_test,
    perturbed_marginal_cdf,
    report_entries,
    sample,
    verify_gaussian_marginal,
    verify_symmetric_invariance,
)

__version__ = "0.1.0"
