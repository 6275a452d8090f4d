#include <cmath>
#include <limits>
#include <stdexcept>

#include <doctest.h>

#include "polymart/bounds.hpp"

using namespace polymart;

TEST_CASE("os_function pinned values") {
    CHECK(os_function(4.0) == doctest::Approx(45.548198144040611).epsilon(1e-13));
    CHECK(os_function(8.0) == doctest::Approx(43.939373382753805).epsilon(1e-13));
    // Os(p) ln p / p decays toward 4*sqrt(2) from above.
    const double r8 = os_function(1e8) * std::log(1e8) / 1e8;
    CHECK(r8 == doctest::Approx(5.8780394912440182).epsilon(1e-12));
    CHECK(r8 > 4.0 * std::sqrt(2.0));
}

TEST_CASE("os_function domain") {
    CHECK_THROWS_AS(os_function(2.0), std::domain_error);
    CHECK_THROWS_AS(os_function(2.0, true), std::domain_error);
    CHECK_THROWS_AS(os_function(3.0), std::domain_error);
    CHECK_THROWS_AS(os_function(std::nan("")), std::domain_error);
    CHECK(os_function(3.0, true) > 0.0);
}

TEST_CASE("os_constant on pinned grids") {
    const OsConstant single4 = os_constant({4.0});
    CHECK(single4.value == doctest::Approx(15.785802561563742).epsilon(1e-13));
    CHECK(single4.argmax == 4.0);
    const OsConstant single8 = os_constant({8.0});
    CHECK(single8.value == doctest::Approx(11.42116979093494).epsilon(1e-13));
    CHECK(single8.argmax == 8.0);
    CHECK_THROWS_AS(os_constant({}), std::domain_error);
    CHECK_THROWS_AS(os_constant({3.0, 4.0}), std::domain_error);
}

TEST_CASE("k_os maximizes at the left end of the default grid") {
    CHECK(k_os() == doctest::Approx(15.785802561563742).epsilon(1e-13));
    const OsConstant full = os_constant(default_os_grid());
    CHECK(full.value == k_os());
    CHECK(full.argmax == 4.0);
    CHECK(default_os_grid().front() == 4.0);
    CHECK(default_os_grid().back() == doctest::Approx(200.0));
}

TEST_CASE("gamma recursion values") {
    CHECK(gamma_d(1) == k_os());
    CHECK(gamma_d(2) == doctest::Approx(498.38312502534477).epsilon(1e-13));
    CHECK(gamma_d(3) == doctest::Approx(17701.599626246767).epsilon(1e-13));
    // one explicit recursion step: gamma(3) = gamma(2) * K_Os * (3/2)^2
    CHECK(gamma_d(3) ==
          doctest::Approx(gamma_d(2) * k_os() * 2.25).epsilon(1e-14));
    CHECK_THROWS_AS(gamma_d(0), std::domain_error);
}

TEST_CASE("gamma sits below its closed-form majorant") {
    CHECK(gamma_upper(1) == k_os());
    CHECK(gamma_upper(2) == doctest::Approx(677.37289618351356).epsilon(1e-13));
    CHECK(gamma_d(1) == gamma_upper(1));  // (1 + 1/d)^d = e only in the limit
    for (int d = 2; d <= 10; ++d) {
        CHECK(gamma_d(d) < gamma_upper(d));
        CHECK(gamma_d(d) > gamma_d(d - 1));
    }
}

TEST_CASE("kappa recursion shares the gamma multiplier") {
    CHECK(kappa_d(1) == k_rosenthal);
    CHECK(kappa_d(2) == doctest::Approx(20.63204394796381).epsilon(1e-13));
    CHECK(kappa_upper(1) == k_rosenthal);
    for (int d = 2; d <= 10; ++d) {
        CHECK(kappa_d(d) < kappa_upper(d));
        // same multiplier: kappa(d)/kappa(d-1) == gamma(d)/gamma(d-1)
        CHECK(kappa_d(d) / kappa_d(d - 1) ==
              doctest::Approx(gamma_d(d) / gamma_d(d - 1)).epsilon(1e-12));
    }
}

TEST_CASE("moment bounds at pinned orders") {
    CHECK(martingale_bound(8.0, 2, 1.0) ==
          doctest::Approx(7376.4919259334562).epsilon(1e-13));
    CHECK(independent_bound(8.0, 2, 1.0) ==
          doctest::Approx(305.3717069371474).epsilon(1e-13));
    CHECK(independent_bound(4.0, 1, 1.0) ==
          doctest::Approx(1.8856024184418752).epsilon(1e-13));
    // linear in the moment product
    CHECK(martingale_bound(8.0, 2, 2.5) ==
          doctest::Approx(2.5 * martingale_bound(8.0, 2, 1.0)));
}

TEST_CASE("moment bound domain") {
    CHECK_THROWS_AS(martingale_bound(3.0, 1, 1.0), std::domain_error);
    CHECK_THROWS_AS(martingale_bound(8.0, 0, 1.0), std::domain_error);
    CHECK_THROWS_AS(
        martingale_bound(8.0, 2, std::numeric_limits<double>::infinity()),
        std::domain_error);
    CHECK_THROWS_AS(martingale_bound(8.0, 2, -1.0), std::domain_error);
    CHECK_THROWS_AS(independent_bound(8.0, 2, -1.0), std::domain_error);
}

TEST_CASE("weighted sum bound") {
    // four weights 1/2 with unit moments: sqrt(sum b^2) = 1, so the bound
    // collapses to K_Os * 4 / ln 4 = Os(4).
    const std::vector<double> b(4, 0.5), mu(4, 1.0);
    CHECK(weighted_sum_bound(4.0, b, mu) ==
          doctest::Approx(os_function(4.0)).epsilon(1e-13));
    // scale equivariance in the weights
    const std::vector<double> b2(4, 1.0);
    CHECK(weighted_sum_bound(4.0, b2, mu) ==
          doctest::Approx(2.0 * weighted_sum_bound(4.0, b, mu)));
    CHECK_THROWS_AS(weighted_sum_bound(4.0, b, std::vector<double>(3, 1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(weighted_sum_bound(4.0, b, std::vector<double>{1, 1, 1, -1}),
                    std::domain_error);
}

TEST_CASE("lower shape") {
    const double e2 = std::exp(2.0);
    CHECK(lower_shape(e2, 1) == doctest::Approx(3.6945280494653251).epsilon(1e-13));
    CHECK(lower_shape(8.0, 2) == doctest::Approx(14.800846087150989).epsilon(1e-13));
    CHECK(lower_shape(17.0, 0) == 1.0);
    CHECK_THROWS_AS(lower_shape(8.0, -1), std::domain_error);
}
