"""Exact enumeration of numerical sets without small atoms.

Numerical sets, their atom monoids and duals live in ``sets``; the
admissible-subset counters A, A', A^sigma, A'^sigma in ``admissible``;
the constructive bijections, spawn trees, binary words and additive
2-bases in ``structures``; sequence tables, densities and certified
limit enclosures in ``sequences``; cross-checking suites in ``verify``;
cache and b-file persistence in ``cache``; the ``nsatoms`` console
entry point in ``cli``.
"""

from . import errors, render, verify
from .admissible import (
    A_LIMIT,
    APRIME_LIMIT,
    FAMILIES,
    SIGMA_LIMIT,
    AdmissiblePair,
    SigmaDecomposition,
    SubsetMask,
    count_A,
    count_A_prime,
    count_A_sigma,
    count_A_sigma_prime,
    enumerate_self_admissible,
    enumerate_sigma_prime,
    format_mask,
    is_admissible_pair,
    is_self_admissible,
    is_sigma_admissible,
    parse_mask,
    partitioned_count,
    sigma_decompose,
)
from .cache import load_cache, merge_into, read_bfile, save_cache, write_bfile
from .sequences import (
    Enclosure,
    SequenceTable,
    VerificationReport,
    anti_atom_bound_check,
    beta,
    beta_sigma,
    dyadic_sqrt_upper,
    enclose_beta_inf,
    enclose_gamma_sigma_inf,
    ensure_A,
    ensure_Aprime,
    ensure_Asigma,
    ensure_Asigmaprime,
    format_table1_csv,
    format_table2_csv,
    gamma,
    gamma_sigma,
    growth_report,
    table1_row,
    table2_row,
    verify_genfunc_coeffs,
    verify_recursions,
)
from .sets import (
    NumericalMonoid,
    NumericalSet,
    SymmetryClass,
    anti_atom_set,
    as_monoid,
    atom_monoid,
    classify_symmetry,
    d_monoid,
    dual,
    enumerate_all_sets,
    enumerate_sigma_sets,
    format_set,
    is_atom,
    is_closed_under_addition,
    is_maximal_negative_semisymmetric,
    is_negative_semisymmetric,
    largest_small_atom,
    n_g,
    omitted_atom_set,
    parse_set,
    small_atoms,
    type_of_noatom_set,
)
from .structures import (
    ADDITIVE_BASIS_LIMIT,
    BMembership,
    additive_basis_count,
    build_S_LMP,
    decompose_B,
    even_odd_drop,
    even_odd_lift,
    set_to_sigma_word,
    set_to_word,
    sigma_build,
    sigma_spawn_children,
    spawn_children,
    tree_levels,
    word_membership,
    word_rowmajor,
    word_to_set,
)

__version__ = "0.1.0"
