"""Sampling and exact reconstruction on finite knit-product groups.

Build a group as a knit product of two subgroups, span a subspace with the
orbit of a generating vector under a unitary representation, measure
subgroup-indexed generalized samples, and reconstruct exactly through a
left inverse whose reconstruction vectors are subgroup translates of a few
base vectors.
"""
from .covariance import (
    CrossCovariance,
    CrossCovarianceMatrix,
    build_cross_cov_matrix,
    check_h_circulant,
    cross_covariance,
    sample_vector,
)
from .dual_synthesis import (
    GroupCompatibleInverse,
    LeftInverseFamily,
    build_compatible_inverse,
    extract_seed_rows,
    left_inverse_member,
    pseudoinverse,
    verify_shift_structure,
)
from .errors import *  # noqa: F401,F403
from .errors import __all__ as _errors_all
from .group_core import (
    FiniteGroup,
    KnitFactorization,
    build_dihedral,
    coset_decomposition,
    coset_representative,
    factor_internal,
    from_cayley_table,
    is_abelian_subset,
    knit_external,
)
from .representation import (
    AnalysisResult,
    CoefficientVector,
    SamplingSubspace,
    UnitaryRepresentation,
    analyze,
    build_subspace,
    left_regular,
    left_translate,
    synthesize,
    validate_representation,
)
from .sampling_engine import (
    FrameBounds,
    InterpolationCheck,
    SampleSet,
    SamplingScheme,
    build_scheme,
    check_interpolation,
    dual_expansion_check,
    reconstruct,
    take_samples,
    verify_frame,
)

__version__ = "0.1.0"

__all__ = [
    "FiniteGroup",
    "KnitFactorization",
    "from_cayley_table",
    "build_dihedral",
    "knit_external",
    "factor_internal",
    "coset_decomposition",
    "coset_representative",
    "is_abelian_subset",
    "UnitaryRepresentation",
    "CoefficientVector",
    "SamplingSubspace",
    "AnalysisResult",
    "validate_representation",
    "left_regular",
    "left_translate",
    "build_subspace",
    "synthesize",
    "analyze",
    "CrossCovariance",
    "CrossCovarianceMatrix",
    "cross_covariance",
    "sample_vector",
    "build_cross_cov_matrix",
    "check_h_circulant",
    "LeftInverseFamily",
    "GroupCompatibleInverse",
    "pseudoinverse",
    "left_inverse_member",
    "extract_seed_rows",
    "build_compatible_inverse",
    "verify_shift_structure",
    "SamplingScheme",
    "SampleSet",
    "FrameBounds",
    "InterpolationCheck",
    "build_scheme",
    "take_samples",
    "reconstruct",
    "verify_frame",
    "check_interpolation",
    "dual_expansion_check",
] + list(_errors_all)
