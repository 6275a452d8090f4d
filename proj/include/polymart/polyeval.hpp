#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "polymart/families.hpp"
#include "polymart/paths.hpp"

namespace polymart {

inline constexpr std::uint64_t default_enumeration_cap = 10'000'000;

enum class WeightForm { ones, separable, dense };

// Coefficient tensor b over the strictly increasing d-tuples in [1, n].
struct WeightSpec {
    WeightForm form = WeightForm::ones;
    int d = 0;
    int n = 0;
    // separable: d vectors of length n; coefficient = prod_m betas[m][i_m]
    std::vector<std::vector<double>> betas;
    // dense: sorted strictly increasing 0-based tuples with values
    std::vector<std::pair<std::vector<int>, double>> entries;

    void validate() const;  // throws std::invalid_argument
    double norm() const;    // sqrt(sum of squared coefficients)
};

WeightSpec ones_weights(int d, int n);
WeightSpec separable_weights(std::vector<std::vector<double>> betas);

// Number of strictly increasing d-tuples, C(n, d); throws on overflow.
std::uint64_t index_count(int d, int n);

// Lexicographic enumeration of I(d, n) as 0-based tuples.
template <class F>
void for_each_index(int d, int n, F&& f) {
    if (d < 1 || n < d) return;
    std::vector<int> idx(static_cast<std::size_t>(d));
    for (int m = 0; m < d; ++m) idx[static_cast<std::size_t>(m)] = m;
    for (;;) {
        f(std::span<const int>(idx));
        int m = d - 1;
        while (m >= 0 && idx[static_cast<std::size_t>(m)] == n - d + m) --m;
        if (m < 0) return;
        ++idx[static_cast<std::size_t>(m)];
        for (int j = m + 1; j < d; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// Coefficient value at one tuple (0-based, strictly increasing).
double weight_at(const WeightSpec& w, std::span<const int> idx);

// Rescales so the coefficient vector has unit Euclidean norm.
WeightSpec normalize_to_B(const WeightSpec& w);

// Brute-force sum over I(d, n) with compensated accumulation. Refuses
// instances with more than `cap` terms (use the DP evaluator instead).
double q_naive(const SamplePath& path, const WeightSpec& w,
               std::uint64_t cap = default_enumeration_cap);

// O(n*d) forward sweep: S_0 = 1, S_m(k) = S_m(k-1) + beta_m(k) xi(k,m)
// S_{m-1}(k-1); returns S_d(n). Empty betas means all-ones weights.
double q_separable_dp(const SamplePath& path,
                      const std::vector<std::vector<double>>& betas);
double q_separable_dp(int n, int d, const double* entries,
                      const std::vector<std::vector<double>>& betas);

// Same sweep, returning all prefixes S_d(1..n) (the martingale n -> Q).
std::vector<double> q_separable_prefix(
    const SamplePath& path, const std::vector<std::vector<double>>& betas);

// Var Q = sum_i b^2 prod_s sigma^2(i_s, s) under independence across all
// entries. Rejects non-independent specs; use Monte Carlo for those.
double variance_independent(const WeightSpec& w, const FamilySpec& spec,
                            std::uint64_t cap = default_enumeration_cap);

struct PsiScan {
    double min_ratio;
    double max_ratio;
};

// Extremes of Var(Q(w)) / |w|^2 over random separable directions;
// analytic under independence, Monte Carlo (mc_paths) otherwise.
PsiScan psi_ratio_scan(const FamilySpec& spec, const std::vector<int>& n_list,
                       int trials, std::uint64_t seed,
                       std::int64_t mc_paths = 4000);

}  // namespace polymart
