"""Exact arithmetic for minimal vectors of lattices.

Decide whether the minimal vectors of a positive definite Gram matrix
generate the lattice or contain a basis, and realize cyclic quotient
codes as polytopes of Gram matrices with prescribed minimal vectors.
All computations are certified over the rationals.
"""

from .codes import (
    BasisEmbedding,
    CodeSpec,
    InconsistentWords,
    NoUnitCoefficient,
    basis_embedding,
    block_permutation_group,
    close_group,
    coset_candidates,
    monomial_matrix,
    symmetry_group,
)
from .formats import ParseError, canonical_json, dump_gram, parse_code, parse_gram
from .lattice import (
    GramMatrix,
    NotPositiveDefinite,
    ShortVectorSet,
    UnsupportedSize,
    eval_form,
    minimal_vectors,
    well_rounded,
)
from .matrices import IntMatrix, RatMatrix, canonical_sign, primitive_vector
from .minkowski import (
    AnalysisReport,
    DependentSubset,
    NotWellRounded,
    SublatticeReport,
    analyze,
    find_minimal_basis,
    generated_by_min,
    maximal_index,
    quotient_census,
    subset_index,
)
from .realization import (
    InfeasibilityCertificate,
    IterationLimitExceeded,
    RealizationProblem,
    RealizationResult,
    invariant_subspace,
    norm_relation_check,
    perfection_relation,
    realize,
    scan_faces,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "BasisEmbedding",
    "CodeSpec",
    "DependentSubset",
    "GramMatrix",
    "InconsistentWords",
    "InfeasibilityCertificate",
    "IntMatrix",
    "IterationLimitExceeded",
    "NoUnitCoefficient",
    "NotPositiveDefinite",
    "NotWellRounded",
    "ParseError",
    "RatMatrix",
    "RealizationProblem",
    "RealizationResult",
    "ShortVectorSet",
    "SublatticeReport",
    "UnsupportedSize",
    "analyze",
    "basis_embedding",
    "block_permutation_group",
    "canonical_json",
    "canonical_sign",
    "close_group",
    "coset_candidates",
    "dump_gram",
    "eval_form",
    "find_minimal_basis",
    "generated_by_min",
    "invariant_subspace",
    "maximal_index",
    "minimal_vectors",
    "monomial_matrix",
    "norm_relation_check",
    "parse_code",
    "parse_gram",
    "perfection_relation",
    "primitive_vector",
    "quotient_census",
    "realize",
    "scan_faces",
    "subset_index",
    "symmetry_group",
    "well_rounded",
]
