"""Classifier-accuracy tests: goodness-of-fit, two-sample and likelihood-free
hypothesis testing over discrete, smooth-density and Gaussian-sequence
classes, backed by the C++ core."""

from ._core import (  # noqa: F401
    BalancedClassifier,
    DiscretePmf,
    DiscreteSepSet,
    GaussianHalfspace,
    GaussianMean,
    GridSpec,
    balanced_classifier,
    bounded_by,
    cat_statistic,
    cat_threshold,
    choose_resolution,
    exact_cat_error,
    exact_sep,
    exact_tau,
    expected_sep_directional,
    expected_sep_half,
    gaussian_sep_set,
    grid_bin,
    halfspace_mass,
    lemma_e_lower_ratio,
    make_negsep_pair,
    make_paninski_pair,
    make_sobolev_signal,
    make_uniform,
    normal_cdf,
    poisson_compare,
    run_gof_test,
    run_gof_test_gauss,
    run_lfht_test,
    run_two_sample_test,
    run_two_sample_test_gauss,
    sample_gaussian_sequence,
    sample_multinomial,
    sample_poissonized,
    sample_symbols,
    select_better_of_two,
    sep_set_directional,
    sep_set_half,
    truncation_level,
    tv_distance,
)

__all__ = [name for name in dir() if not name.startswith("_")]
