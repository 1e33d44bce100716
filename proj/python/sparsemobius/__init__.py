"""Sparse Möbius transform: recover sparse set-function spectra from evaluation queries."""

from ._core import (
    CSV_HEADER,
    DEFAULT_TAU,
    PRNG,
    AlgorithmError,
    CapacityError,
    DecodeError,
    DegreeOverflowError,
    DimensionError,
    Error,
    InfeasiblePrefixError,
    ParameterError,
    ValidationError,
    brute_force_learn,
    check_subset_sum_independence,
    construct_disjunct,
    decode_disjunct,
    evaluate,
    gbsa_run,
    gbsa_test_budget,
    generate_synthetic,
    lower_bound,
    mobius_transform,
    optimality_ratio,
    reconstruct,
    reconstruct_function,
    run_benchmark,
    verify_disjunct,
    zeta_transform,
)

__version__ = "0.1.0"
