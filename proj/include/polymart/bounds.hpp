#pragma once

#include <span>
#include <vector>

namespace polymart {

// Sharp multiplier in the independent-summand p-norm inequality of the
// form K * (p / ln p); stored constant, not re-derived here.
inline constexpr double k_rosenthal = 0.6535;

// Osekowski's function 4*sqrt(2) * (p/4 + 1)^{1/p} * (1 + p / ln(p/2)).
// Domain is p >= 4; pass extended_domain=true to allow 2 < p < 4 for
// exploration (the singularity at p = 2 is always rejected).
double os_function(double p, bool extended_domain = false);

struct OsConstant {
    double value;
    double argmax;
};

// max over the grid of Os(p) / (p / ln p) together with its maximizer.
OsConstant os_constant(const std::vector<double>& p_grid);

// The grid [4, 200] with step 0.01 used to pin the constant.
std::vector<double> default_os_grid();

// Osekowski's constant on the default grid (cached after first call).
double k_os();

// gamma(1) = K_Os, gamma(d+1) = gamma(d) * K_Os * (1 + 1/d)^d.
double gamma_d(int d);
// Closed-form majorant K_Os^d * e^{d-1}.
double gamma_upper(int d);

// kappa(1) = K_R, same multiplier as gamma; majorant K_R * (K_Os e)^{d-1}.
double kappa_d(int d);
double kappa_upper(int d);

// Degree-d moment bound gamma(d) * (p / ln p)^d * v, where v is the
// product of layer moments evaluated at order d*p. Valid for any
// martingale-difference array with finite v.
double martingale_bound(double p, int d, double v);

// Independent-case variant: kappa(d) * (p / ln p)^d * w, with w the
// product of layer moments at order p.
double independent_bound(double p, int d, double w);

// One-dimensional weighted bound K_Os * (p / ln p) * sqrt(sum b_k^2 mu_k^2).
double weighted_sum_bound(double p, std::span<const double> weights,
                          std::span<const double> mus);

// Reference lower-bound shape (p / ln p)^d, multiplicative constant
// deliberately left out; d = 0 gives the flat baseline 1.
double lower_shape(double p, int d);

}  // namespace polymart
