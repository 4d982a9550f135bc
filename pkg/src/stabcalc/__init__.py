"""Exact restriction tables for torus-stable classes on cotangent bundles of
flag varieties, with quotient (partial-flag) tables and classical limits."""

from .group_algebra import (
    GroupAlgebraElement,
    algebra_mul,
    basis_element,
    central_mul,
    rmatrix_minus,
    rmatrix_plus,
    scalar_element,
)
from .parabolic import (
    ParabolicTable,
    apply_A3,
    mod_hbar2_P,
    parabolic_duality_pairing,
    parabolic_table,
    representative_audit,
    stab_P_via_A1,
    stab_P_via_A2,
)
from .poly_ring import (
    FixedPointFunction,
    LinearForm,
    MPoly,
    PolyRing,
    RatFunc,
    exact_divide,
    weyl_act,
)
from .root_system import (
    CosetSpace,
    RootSystem,
    WeylElement,
    build_root_system,
    coset_space,
    enumerate_weyl,
    inversion_set,
    reduced_words,
    weyl_order,
)
from .schubert_limit import (
    billey_diagonal,
    billey_from_limit,
    billey_restriction,
    schubert_P_restriction,
)
from .stable_basis import (
    RestrictionTable,
    apply_A0,
    diagonal_value,
    duality_pairing,
    euler_class_fixed_point,
    minus_column,
    mod_hbar2,
    plus_column,
    stab_minus_restriction,
    stab_plus_restriction,
    stab_table,
)
from .suites import SUITES, SuiteConfig, SuiteResult, run_suite, run_suites

__version__ = "0.1.0"

__all__ = [
    "CosetSpace",
    "FixedPointFunction",
    "GroupAlgebraElement",
    "LinearForm",
    "MPoly",
    "ParabolicTable",
    "PolyRing",
    "RatFunc",
    "RestrictionTable",
    "RootSystem",
    "SUITES",
    "SuiteConfig",
    "SuiteResult",
    "WeylElement",
    "algebra_mul",
    "apply_A0",
    "apply_A3",
    "basis_element",
    "billey_diagonal",
    "billey_from_limit",
    "billey_restriction",
    "build_root_system",
    "central_mul",
    "coset_space",
    "diagonal_value",
    "duality_pairing",
    "enumerate_weyl",
    "euler_class_fixed_point",
    "exact_divide",
    "inversion_set",
    "minus_column",
    "mod_hbar2",
    "mod_hbar2_P",
    "parabolic_duality_pairing",
    "parabolic_table",
    "plus_column",
    "reduced_words",
    "representative_audit",
    "rmatrix_minus",
    "rmatrix_plus",
    "run_suite",
    "run_suites",
    "scalar_element",
    "schubert_P_restriction",
    "stab_P_via_A1",
    "stab_P_via_A2",
    "stab_minus_restriction",
    "stab_plus_restriction",
    "stab_table",
    "weyl_act",
    "weyl_order",
]
