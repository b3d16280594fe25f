"""Exact computations on Witt type Lie algebras V(f): half-derivations and
transposed Poisson structures, each checked against brute-force oracles."""

__version__ = "0.1.0"

from .algebra import AlgebraVector, CheckReport, GradedMap, LinearMap, Verdict, bracket, verify_jacobi
from .derivations import (
    classified_basis,
    compare_spaces,
    compare_windowed,
    is_delta_derivation,
    is_half_derivation,
    solve_halfder_space,
    solve_halfder_space_windowed,
)
from .errors import (
    AbelianCaseError,
    ClassificationMismatchError,
    CoefficientDomainError,
    InputError,
    InternalConsistencyError,
    UnverifiedProductError,
    WittError,
)
from .exactnum import Scalar, parse_scalar
from .group import GroupSpec, Window
from .tpa import (
    Product,
    case2_product,
    case3_product,
    check_axioms,
    classify_tpp,
    homlie_check,
    is_tpp,
    mutation_product,
    tabulated_product,
)
from .wittfn import CaseTag, WittFunction, classify, validate

__all__ = [
    "__version__",
    "AbelianCaseError",
    "AlgebraVector",
    "CaseTag",
    "CheckReport",
    "ClassificationMismatchError",
    "CoefficientDomainError",
    "GradedMap",
    "GroupSpec",
    "InputError",
    "InternalConsistencyError",
    "LinearMap",
    "Product",
    "Scalar",
    "UnverifiedProductError",
    "Verdict",
    "Window",
    "WittError",
    "WittFunction",
    "bracket",
    "case2_product",
    "case3_product",
    "check_axioms",
    "classified_basis",
    "classify",
    "classify_tpp",
    "compare_spaces",
    "compare_windowed",
    "homlie_check",
    "is_delta_derivation",
    "is_half_derivation",
    "is_tpp",
    "mutation_product",
    "parse_scalar",
    "solve_halfder_space",
    "solve_halfder_space_windowed",
    "tabulated_product",
    "validate",
    "verify_jacobi",
]
