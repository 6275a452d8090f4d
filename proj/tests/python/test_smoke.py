"""Smoke tests for the python bindings; run directly or under pytest."""

import math

import polymart as pm


def test_constants():
    value, argmax = pm.os_constant()
    assert abs(value - 15.785802561563742) < 1e-12
    assert argmax == 4.0
    assert pm.k_os() == value
    assert pm.k_rosenthal == 0.6535
    assert abs(pm.gamma_d(2) - 498.38312502534477) < 1e-9
    assert abs(pm.kappa_d(2) - 20.63204394796381) < 1e-10


def test_bounds_and_moments():
    assert abs(pm.martingale_bound(8.0, 2, 1.0) - 7376.4919259334562) < 1e-8
    assert abs(pm.independent_bound(4.0, 1, 1.0) - 1.8856024184418752) < 1e-12
    assert abs(pm.mu_exact("gaussian", 4.0) - 1.3160740129524925) < 1e-12
    assert abs(pm.mu_exact("centered_poisson", 4.0) - math.sqrt(2.0)) < 1e-12
    assert abs(pm.poisson_asymptotic_ratio(512.0) - 1.6242533525481628) < 1e-10
    assert abs(pm.product_moment(2, 8.0) - pm.mu_exact("centered_poisson", 8.0) ** 2) < 1e-10
    assert abs(pm.lower_shape(8.0, 2) - 14.800846087150989) < 1e-12
    assert abs(pm.weighted_sum_bound(4.0, [0.5] * 4, [1.0] * 4) - pm.os_function(4.0)) < 1e-10


def test_paths_and_evaluators():
    spec = pm.FamilySpec("rademacher", n=8, d=2)
    assert spec.independent()
    path = pm.generate(spec, path_id=3, seed=11)
    assert path.n == 8 and path.d == 2
    assert all(abs(x) == 1.0 for x in path.entries)
    dp = pm.q_separable_dp(path)
    brute = pm.q_ones_naive(path)
    assert abs(dp - brute) <= 1e-10 * max(1.0, abs(brute))
    assert pm.index_count(2, 8) == 28
    # determinism
    again = pm.generate(spec, path_id=3, seed=11)
    assert again.entries == path.entries


def test_estimate_report():
    spec = pm.FamilySpec("rademacher", n=16, d=1)
    rep = pm.estimate_U(spec, w_directions=3, p=4.0, paths=4000, seed=7)
    assert rep["family"] == "rademacher"
    assert rep["bound_thm21"] > rep["empirical_max"]
    assert rep["bound_thm31"] > rep["empirical_max"]
    assert rep["ratio"] < 0.2
    exact = (3 * 16.0**2 - 2 * 16.0) ** 0.25 / 4.0
    dir0 = rep["directions"][0]
    assert dir0[0] == 0
    assert abs(dir0[1] - exact) < 5 * exact * dir0[2]


def test_tail_pipeline():
    alpha, beta = pm.theorem41_exponents(1, 2.0, 0.0)
    assert abs(alpha - 2.0 / 3.0) < 1e-12 and abs(beta - 2.0 / 3.0) < 1e-12
    xs = pm.log_grid(10.0, 1e4, 48)
    cx, ct = pm.markov_tail_curve(1.0, 1.5, -1.0, xs)
    fit = pm.fit_tail_shape(cx, ct, "inverse_slope")
    assert abs(fit["alpha"] - alpha) / alpha < 0.10
    assert abs(pm.tail_to_moment(0.5, 2.0, 0.0, 16.0) - 2.8490659262732215) < 1e-6
    assert pm.moment_to_tail(3.0, 0.5, 0.0, 3.0) == 1.0


def test_decomposition_and_tails():
    spec = pm.FamilySpec("rademacher", n=16, d=1)
    dec = pm.osekowski_decomposition(spec, n=16, p=4.0, paths=4000, seed=5)
    assert abs(dec["s1"] - 4.0) < 1e-10
    assert abs(dec["s2"] - 2.0) < 1e-10
    assert dec["lhs"] < dec["rhs"]
    curve = pm.empirical_tail([1.0, -2.0, 3.0], [0.5, 2.0, 4.0])
    assert curve["fraction"] == [1.0, 2.0 / 3.0, 0.0]
    assert all(lo <= f for lo, f in zip(curve["lo"], curve["fraction"]))


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"{test.__name__}: ok")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    main()
