"""Joint sparse recovery for multiple measurement vectors."""

from ._jsrec import (
    RecoveryError,
    big_F,
    binary_entropy,
    canonicalize,
    chi_tail_bounds,
    entropy_pair,
    generalized_music_stats,
    generate_instance,
    ml_necessary_rho,
    ml_sufficient,
    mp_cdf,
    mp_density,
    recover,
    run_experiment,
    somp,
    somp_sample_bound,
    spark,
    subspace_fit_stats,
    subspace_somp,
    t1_of_alpha,
    two_thresholding,
)

__all__ = [
    "RecoveryError",
    "big_F",
    "binary_entropy",
    "canonicalize",
    "chi_tail_bounds",
    "entropy_pair",
    "generalized_music_stats",
    "generate_instance",
    "ml_necessary_rho",
    "ml_sufficient",
    "mp_cdf",
    "mp_density",
    "recover",
    "run_experiment",
    "somp",
    "somp_sample_bound",
    "spark",
    "subspace_fit_stats",
    "subspace_somp",
    "t1_of_alpha",
    "two_thresholding",
]
