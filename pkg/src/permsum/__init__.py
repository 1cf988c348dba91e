"""Extremal families of permutations of Z_n under pairwise sum/difference
constraints: constructions, verification, closed-form bounds, and exact
search with certificates."""

from .families import (
    BoundEntry,
    BoundsReport,
    Family,
    bounds,
    construct_p1,
    construct_p2,
    construct_p3_prime,
    family_from_text,
    family_to_text,
    read_family,
    to_orthomorphisms,
    write_family,
)
from .modring import Modulus, crt_combine, crt_split, factorize, is_prime, is_unit, unit_halfset, units
from .perms import (
    BudgetError,
    affine_apply,
    all_permutations,
    compose,
    identity,
    inner_product_mod,
    invert,
    is_permutation,
    pair_property,
    perm,
    pointwise_add,
    pointwise_sub,
)
from .search import CompatGraph, SearchResult, build_compat_graph, extremal, max_clique, oracle_extremal
from .verify import (
    EdgeColoring,
    VerifyReport,
    bipartite_bound_check,
    canonical_form,
    cauchy_davenport_check,
    complete_edge_coloring,
    distinct_sum_witness,
    equivalence_classes,
    isotropy_rank_check,
    sumset,
    verify_family,
    verify_file,
)

__all__ = [name for name in dir() if not name.startswith("_")]
