#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polymart/families.hpp"
#include "polymart/polyeval.hpp"

namespace polymart {

// ((1/N) sum |x_k|^p)^{1/p} via log-sum-exp; zero-heavy input is fine.
double lp_norm(std::span<const double> samples, double p);

struct McNorm {
    double value;
    double rel_err;  // relative standard error of the norm (delta method)
};
McNorm lp_norm_mc(std::span<const double> samples, double p);

struct DirectionResult {
    int direction_id;  // 0 = normalized all-ones, >= 1 sampled
    double empirical;
    double mc_err;
};

struct BoundReport {
    FamilyKind kind;
    int d = 0;
    int n = 0;
    double p = 0;
    double bound_thm21 = 0;  // martingale bound (applies to every family)
    double bound_thm31 = 0;  // independent bound; NaN for dependent kinds
    std::vector<DirectionResult> directions;
    double empirical_max = 0;
    double ratio = 0;  // empirical_max / bound_thm21
    double mc_err_at_max = 0;
};

// Monte Carlo approximation of sup_{b in B} |Q(d,n,b)|_p: the normalized
// all-ones direction plus `w_directions` random separable directions in
// B, each evaluated over `paths` sample paths. The sweep variant shares
// one path batch and one Q evaluation per direction across all p values
// (Q does not depend on p). Deterministic in (spec, seed).
std::vector<BoundReport> estimate_U_sweep(const FamilySpec& spec,
                                          std::span<const double> p_list,
                                          int w_directions, std::int64_t paths,
                                          std::uint64_t seed);
BoundReport estimate_U(const FamilySpec& spec, int w_directions, double p,
                       std::int64_t paths, std::uint64_t seed);

// Variance-normalized variant: per direction, Q is divided by
// sqrt(Var Q(b)) (analytic under independence, sample variance
// otherwise) and compared against the tilde bounds built from
// variance-normalized moment envelopes.
std::vector<BoundReport> normed_report_sweep(const FamilySpec& spec,
                                             std::span<const double> p_list,
                                             int w_directions,
                                             std::int64_t paths,
                                             std::uint64_t seed);

struct Decomposition {
    double lhs;           // |sum_k xi_k|_p
    double s1;            // |theta(n)|_p, theta^2 = sum_k E[xi_k^2 | past]
    double s2;            // |(sum_k |xi_k|^p)^{1/p}|_p
    double rhs;           // Os(p) * (s1 + s2)
    double weighted_rhs;  // K_Os (p/ln p) sqrt(sum_k mu_k^2(p))
    double lhs_rel_err;
};

// One-dimensional decomposition diagnostics for the row sums of a d=1
// family; conditional variances are analytic (h_k^2 sigma_k^2).
Decomposition osekowski_decomposition(const FamilySpec& spec, int n, double p,
                                      std::int64_t paths, std::uint64_t seed);

struct TailCurve {
    std::vector<double> x;
    std::vector<double> fraction;  // share of |samples| >= x
    std::vector<double> lo;        // Wilson interval bounds at z
    std::vector<double> hi;
};

TailCurve empirical_tail(std::span<const double> samples,
                         std::span<const double> x_grid, double z = 3.0);

}  // namespace polymart
