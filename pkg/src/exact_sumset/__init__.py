"""Exact output-sensitive sumsets of rational sets, and what they unlock.

The core engine computes A + B in time that scales with the answer rather
than with |A| * |B|, entirely in exact rational arithmetic, by combining
moment-sequence recovery (a linear-recurrence view of sparse functions),
random restrictions, and coprime polynomial factorization, with a
verification step that makes every returned set unconditionally correct.

On top of the engine: exact convolution of positive finite-support
functions, geometric pattern matching (all shifts of A into B), prefix- and
interval-restricted sumsets, output-sensitive subset sums with and without
a target cap, and 3SUM queries over preprocessed sets.
"""

from .algebra import (
    Poly,
    Rat,
    format_rational,
    hankel_det_sign,
    parse_rational,
    poly_divrem,
    poly_gcd,
    poly_mul,
    product_tree,
    read_rational_tokens,
    remainder_tree,
)
from .circuit import (
    Circuit,
    CircuitBuilder,
    baur_strassen,
    build_shift_count_circuit,
    eval_circuit,
)
from .constellation import constellation, constellation_nd, filter_shifts
from .coprime import CoprimeBasis, coprime_basis, extend_basis, merge_bases
from .errors import ContractViolation, ParseError, RetryCapExceeded
from .prony import (
    PowerSums,
    SparseFn,
    convolve_power_sums,
    interpolate_from_power_sums,
    lambda_of_sumset,
    minimal_polynomial,
    power_sums,
    sparsity_exceeds,
    sumset_size,
)
from .restricted import ClaimAtLeast, interval_sumset, prefix_sumset, sumset_with_budget
from .subsetsum import RatMultiset, all_subset_sums, capped_subset_sums
from .sumset import (
    RestrictionFamily,
    RunStats,
    SumsetParams,
    compute_sumset,
    convolve,
    random_restrictions,
    real_set,
)
from .threesum import BsgDecomposition, ThreeSumIndex, bsg_decompose, preprocess, query

__version__ = "0.1.0"

__all__ = [
    "BsgDecomposition",
    "Circuit",
    "CircuitBuilder",
    "ClaimAtLeast",
    "ContractViolation",
    "CoprimeBasis",
    "ParseError",
    "Poly",
    "PowerSums",
    "Rat",
    "RatMultiset",
    "RestrictionFamily",
    "RetryCapExceeded",
    "RunStats",
    "SparseFn",
    "SumsetParams",
    "ThreeSumIndex",
    "all_subset_sums",
    "baur_strassen",
    "bsg_decompose",
    "build_shift_count_circuit",
    "capped_subset_sums",
    "compute_sumset",
    "constellation",
    "constellation_nd",
    "convolve",
    "convolve_power_sums",
    "coprime_basis",
    "eval_circuit",
    "extend_basis",
    "filter_shifts",
    "format_rational",
    "hankel_det_sign",
    "interpolate_from_power_sums",
    "interval_sumset",
    "lambda_of_sumset",
    "merge_bases",
    "minimal_polynomial",
    "parse_rational",
    "poly_divrem",
    "poly_gcd",
    "poly_mul",
    "power_sums",
    "prefix_sumset",
    "preprocess",
    "product_tree",
    "query",
    "random_restrictions",
    "read_rational_tokens",
    "real_set",
    "remainder_tree",
    "sparsity_exceeds",
    "sumset_size",
    "sumset_with_budget",
]
