"""Numerical ranges of complex matrices under induced l1/l2/linf norms,
spectral-constant lower bounds for the polynomial calculus, flat sign
polynomials, and combinatorial (Schreier-type) norm experiments."""

from .linalg import (
    KINDS,
    ConvergenceError,
    SingularMatrixError,
    Spectrum,
    as_matrix,
    char_poly,
    eigenvalues,
    induced_norm,
    jordan_block,
    poly_apply,
    resolvent_norm,
    toeplitz_calculus,
    transpose,
)
from .numrange import (
    ConvexRegion,
    Disk,
    GridMismatchError,
    RegionConsistencyError,
    SupportFunction,
    affine_transform_region,
    epsilon_hull,
    gershgorin_disks,
    gershgorin_hull_l1,
    hausdorff,
    numerical_radius,
    range_disks,
    range_polygon,
    region_boundary_points,
    region_contains,
    region_diameter,
    region_distance,
    support_radius,
    support_radii,
)
from .polytools import (
    SignPolynomial,
    SupBound,
    compose_affine,
    flat_sign_polynomial,
    poly_degree,
    poly_eval,
    poly_mul,
    random_sign_polynomial,
    rudin_shapiro,
    sup_on_circle,
    sup_on_region,
    taylor_cos,
)
from .psi import (
    ExperimentReport,
    PsiEstimate,
    affine_invariance_check,
    bohr_check,
    cos_example,
    default_region,
    direct_sum_example,
    epsilon_hull_check,
    jordan_experiment,
    psi_lower_bound,
    psi_ratio,
    shift_compression,
    two_by_two_l1_suite,
)
from .combinat import (
    SCHREIER,
    CutShiftSpec,
    SparseVector,
    SpreadingFamily,
    cut_shift_apply,
    cut_shift_experiment,
    family_norm,
    sparse_vector,
    unit_vector,
)
from .rng import SplitMix64

__version__ = "0.1.0"
