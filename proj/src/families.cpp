#include "polymart/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace polymart {

FamilyKind family_from_string(std::string_view s) {
    if (s == "rademacher") return FamilyKind::rademacher;
    if (s == "gaussian") return FamilyKind::gaussian;
    if (s == "centered_poisson") return FamilyKind::centered_poisson;
    if (s == "uniform_centered") return FamilyKind::uniform_centered;
    if (s == "martingale_scaled") return FamilyKind::martingale_scaled;
    throw std::invalid_argument("unknown family kind: " + std::string(s));
}

std::string_view to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::rademacher: return "rademacher";
        case FamilyKind::gaussian: return "gaussian";
        case FamilyKind::centered_poisson: return "centered_poisson";
        case FamilyKind::uniform_centered: return "uniform_centered";
        case FamilyKind::martingale_scaled: return "martingale_scaled";
    }
    throw std::invalid_argument("unknown family kind");
}

double FamilySpec::sigma2_at(int i, int m) const {
    if (sigma2.empty()) return 1.0;
    if (sigma2.size() == 1) return sigma2[0];
    if (sigma2.size() == static_cast<std::size_t>(d))
        return sigma2[static_cast<std::size_t>(m)];
    return sigma2[static_cast<std::size_t>(i) * d + m];
}

double FamilySpec::sigma_at(int i, int m) const {
    return std::sqrt(sigma2_at(i, m));
}

void FamilySpec::validate() const {
    if (n < 1 || d < 1)
        throw std::invalid_argument("family spec needs n >= 1 and d >= 1");
    if (kind == FamilyKind::martingale_scaled &&
        base == FamilyKind::martingale_scaled)
        throw std::invalid_argument("scaled family needs an independent base kind");
    const std::size_t s = sigma2.size();
    if (s != 0 && s != 1 && s != static_cast<std::size_t>(d) &&
        s != static_cast<std::size_t>(n) * static_cast<std::size_t>(d))
        throw std::invalid_argument("sigma2 must have size 1, d, or n*d");
    for (double v : sigma2)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("per-entry variances must be positive");
}

namespace {

// ln of the p-th absolute central moment of Poisson(1): sum over k of
// e^{-1} |k-1|^p / k!, accumulated in log space. Truncation is certified
// by a geometric tail bound: once term ratios fall below 1/2, the
// remainder is < 2 * next term.
double ln_poisson_moment_p(double p) {
    if (!(p >= 2.0)) throw std::domain_error("moment order must be >= 2");
    // k = 0 contributes e^{-1} (|0-1|^p = 1); k = 1 contributes nothing.
    double lse = -1.0;  // ln of accumulated sum
    double lfact = 0.0; // ln k!
    constexpr int k_cap = 400000;
    for (int k = 2; k <= k_cap; ++k) {
        lfact += std::log(static_cast<double>(k));
        const double lt = -1.0 + p * std::log(static_cast<double>(k - 1)) - lfact;
        lse = std::max(lse, lt) + std::log1p(std::exp(-std::fabs(lse - lt)));
        // ratio of term k+1 to term k: ((k/(k-1))^p) / (k+1)
        const double lratio =
            p * (std::log(static_cast <double>(k)) - std::log(static_cast<double>(k - 1))) -
            std::log(static_cast<double>(k + 1));
        if (lratio < std::log(0.5)) {
            const double lnext = lt + lratio;
            const double lrem = std::log(2.0) + lnext;  // geometric tail bound
            if (lrem - lse < std::log(1e-14)) return lse;
        }
    }
    throw std::overflow_error(
        "moment order too large for the certified Poisson series truncation");
}

double ln_mu_poisson(double p) {
    static std::map<double, double> cache;
    static std::mutex mu;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(p); it != cache.end()) return it->second;
    }
    const double v = ln_poisson_moment_p(p) / p;
    std::lock_guard lock(mu);
    cache.emplace(p, v);
    return v;
}

}  // namespace

double mu_exact(FamilyKind kind, double p) {
    if (!(p >= 2.0) || !std::isfinite(p))
        throw std::domain_error("moment order must be finite and >= 2");
    switch (kind) {
        case FamilyKind::rademacher:
            return 1.0;
        case FamilyKind::gaussian:
            // sqrt(2) * (Gamma((p+1)/2) / sqrt(pi))^{1/p}
            return std::sqrt(2.0) *
                   std::exp((std::lgamma((p + 1.0) / 2.0) -
                             0.5 * std::log(std::numbers::pi_v<double>)) /
                            p);
        case FamilyKind::centered_poisson:
            return std::exp(ln_mu_poisson(p));
        case FamilyKind::uniform_centered:
            // |xi|_p for uniform on [-sqrt(3), sqrt(3)]
            return std::sqrt(3.0) * std::pow(p + 1.0, -1.0 / p);
        case FamilyKind::martingale_scaled:
            throw std::invalid_argument(
                "martingale_scaled has no closed-form moment; use the "
                "envelope profile");
    }
    throw std::invalid_argument("unknown family kind");
}

double poisson_asymptotic_ratio(double p) {
    if (!(p >= 8.0)) throw std::domain_error("asymptotic ratio needs p >= 8");
    const double ln_mu = ln_mu_poisson(p);
    return std::exp(ln_mu + 1.0 + std::log(std::log(p)) - std::log(p));
}

double product_moment(int d, double p) {
    if (d < 1) throw std::domain_error("degree must be >= 1");
    if (!(p >= 8.0)) throw std::domain_error("product moment needs p >= 8");
    return std::exp(d * ln_mu_poisson(p));
}

double regular_variation_check(FamilyKind kind, int d,
                               const std::vector<double>& p_grid) {
    if (d < 1) throw std::domain_error("degree must be >= 1");
    if (p_grid.empty()) throw std::domain_error("empty grid");
    double worst = 0.0;
    for (double p : p_grid) {
        if (!(p >= 2.0)) throw std::domain_error("grid point below 2");
        worst = std::max(worst, mu_exact(kind, d * p) / mu_exact(kind, p));
    }
    return worst;
}

MomentProfile MomentProfile::from_spec(const FamilySpec& spec) {
    spec.validate();
    MomentProfile prof;
    prof.d_ = spec.d;
    const bool scaled = spec.kind == FamilyKind::martingale_scaled;
    prof.mu_kind_ = scaled ? spec.base : spec.kind;
    prof.sigma_max_.assign(static_cast<std::size_t>(spec.d), 0.0);
    prof.sigma_floor_.assign(static_cast<std::size_t>(spec.d), 0.0);
    for (int m = 0; m < spec.d; ++m) {
        double smax = 0.0, smin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < spec.n; ++i) {
            const double s = spec.sigma_at(i, m);
            smax = std::max(smax, s);
            smin = std::min(smin, s);
        }
        prof.sigma_max_[static_cast<std::size_t>(m)] = smax;
        // The scaled factor h in [1/2, 1] lowers the attainable standard
        // deviation to at worst sigma/2.
        prof.sigma_floor_[static_cast<std::size_t>(m)] = scaled ? smin / 2.0 : smin;
    }
    return prof;
}

double MomentProfile::mu(int m, double p) const {
    return sigma_max_[static_cast<std::size_t>(m)] * mu_exact(mu_kind_, p);
}

double MomentProfile::mu_tilde(int m, double p) const {
    return mu(m, p) / sigma_floor_[static_cast<std::size_t>(m)];
}

double MomentProfile::v(double p) const {
    double prod = 1.0;
    for (int m = 0; m < d_; ++m) prod *= mu(m, d_ * p);
    return prod;
}

double MomentProfile::w(double p) const {
    double prod = 1.0;
    for (int m = 0; m < d_; ++m) prod *= mu(m, p);
    return prod;
}

double MomentProfile::v_tilde(double p) const {
    double prod = 1.0;
    for (int m = 0; m < d_; ++m) prod *= mu_tilde(m, d_ * p);
    return prod;
}

double MomentProfile::w_tilde(double p) const {
    double prod = 1.0;
    for (int m = 0; m < d_; ++m) prod *= mu_tilde(m, p);
    return prod;
}

}  // namespace polymart
