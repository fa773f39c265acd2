"""Pfaffian correlation kernels for measures on integer partitions.

The package evaluates two families of measures on partitions, the
z-measures with Jack parameter 2 and the Poissonized Plancherel measure,
and their correlation functions, which are Pfaffians of a 2x2 matrix
valued kernel.  The scalar kernel behind that matrix can be computed by
three independent routes (double contour quadrature, a bilinear series,
and special function closed forms), and everything can be cross checked
against brute force partition sums.
"""

from .backend import BACKEND
from .errors import (
    AsymmetryError,
    ConvergenceError,
    ConvergenceWarning,
    DomainError,
    OddOrderError,
    PfapartError,
    PoleError,
    QuadratureError,
    SingularMatrixError,
    TailError,
)
from .kernels import (
    MatrixKernel2x2,
    QuadratureSettings,
    ScalarKernel,
    UpsilonEntry,
    assemble_k,
    difference_matrix,
    e_toeplitz,
    finite_n_kernel,
    finite_n_matrix,
    phi_closed_form_z,
    phi_contour,
    s_contour,
    s_series,
    upsilon,
    upsilon_bilinear,
    upsilon_bilinear_closed,
)
from .measures import (
    PlancherelParams,
    ZMeasureParams,
    determinant_form_z,
    hook_determinant_identity,
    level_measure,
    mixed_measure,
    plancherel_determinant_form,
    plancherel_mixed,
    positive_real_power,
    schur2_determinant_weight,
)
from .oracle import (
    IdentityCheck,
    IdentityReport,
    TruncationPolicy,
    brute_force_rho,
    identity_suite,
    partition_function_schur2,
)
from .partitions import (
    Partition,
    conjugate,
    descent_set_d2,
    enumerate_partitions,
    generalized_pochhammer,
    hook_products,
)
from .pfaffian import (
    AntisymmetricMatrix,
    CorrelationQuery,
    correlation_pfaffian,
    pfaffian,
    pfaffian_cofactor,
)
from .special_functions import (
    bessel_j,
    bessel_j_many,
    pochhammer_shift,
    reciprocal_gamma,
    regularized_2f1,
    rising_factorial,
)
from .specializations import (
    Specialization,
    e_ratio,
    from_e_coefficients,
    inverse_e_coefficients,
    load_specialization,
    pi_plancherel,
    pi_z,
    principal_power,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Partition",
    "conjugate",
    "descent_set_d2",
    "enumerate_partitions",
    "generalized_pochhammer",
    "hook_products",
    "ZMeasureParams",
    "PlancherelParams",
    "level_measure",
    "mixed_measure",
    "plancherel_mixed",
    "schur2_determinant_weight",
    "determinant_form_z",
    "plancherel_determinant_form",
    "hook_determinant_identity",
    "positive_real_power",
    "Specialization",
    "pi_z",
    "pi_plancherel",
    "from_e_coefficients",
    "load_specialization",
    "e_ratio",
    "inverse_e_coefficients",
    "principal_power",
    "rising_factorial",
    "pochhammer_shift",
    "reciprocal_gamma",
    "regularized_2f1",
    "bessel_j",
    "bessel_j_many",
    "QuadratureSettings",
    "ScalarKernel",
    "UpsilonEntry",
    "MatrixKernel2x2",
    "upsilon",
    "upsilon_bilinear",
    "upsilon_bilinear_closed",
    "phi_contour",
    "phi_closed_form_z",
    "s_contour",
    "s_series",
    "assemble_k",
    "finite_n_kernel",
    "finite_n_matrix",
    "e_toeplitz",
    "difference_matrix",
    "AntisymmetricMatrix",
    "CorrelationQuery",
    "pfaffian",
    "pfaffian_cofactor",
    "correlation_pfaffian",
    "TruncationPolicy",
    "brute_force_rho",
    "partition_function_schur2",
    "identity_suite",
    "IdentityReport",
    "IdentityCheck",
    "PfapartError",
    "PoleError",
    "DomainError",
    "ConvergenceError",
    "ConvergenceWarning",
    "QuadratureError",
    "SingularMatrixError",
    "OddOrderError",
    "AsymmetryError",
    "TailError",
    "__version__",
]
