"""Sharp moment and tail bounds for discrete-time polynomial martingales."""

from ._core import (
    FamilySpec,
    SamplePath,
    empirical_tail,
    estimate_U,
    fit_tail_shape,
    gamma_d,
    gamma_upper,
    generate,
    independent_bound,
    index_count,
    k_os,
    k_rosenthal,
    kappa_d,
    kappa_upper,
    log_grid,
    lower_shape,
    lp_norm,
    markov_tail_curve,
    martingale_bound,
    moment_to_tail,
    mu_exact,
    os_constant,
    os_function,
    osekowski_decomposition,
    poisson_asymptotic_ratio,
    product_moment,
    q_ones_naive,
    q_separable_dp,
    tail_to_moment,
    theorem41_exponents,
    weighted_sum_bound,
)

__all__ = [
    "FamilySpec",
    "SamplePath",
    "empirical_tail",
    "estimate_U",
    "fit_tail_shape",
    "gamma_d",
    "gamma_upper",
    "generate",
    "independent_bound",
    "index_count",
    "k_os",
    "k_rosenthal",
    "kappa_d",
    "kappa_upper",
    "log_grid",
    "lower_shape",
    "lp_norm",
    "markov_tail_curve",
    "martingale_bound",
    "moment_to_tail",
    "mu_exact",
    "os_constant",
    "os_function",
    "osekowski_decomposition",
    "poisson_asymptotic_ratio",
    "product_moment",
    "q_ones_naive",
    "q_separable_dp",
    "tail_to_moment",
    "theorem41_exponents",
    "weighted_sum_bound",
]
