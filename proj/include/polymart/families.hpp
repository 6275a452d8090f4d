#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace polymart {

enum class FamilyKind {
    rademacher,
    gaussian,
    centered_poisson,   // Poisson(1) minus its mean
    uniform_centered,   // uniform on [-sqrt(3), sqrt(3)], unit variance
    martingale_scaled,  // base noise times a past-measurable factor in {1/2, 1}
};

FamilyKind family_from_string(std::string_view s);
std::string_view to_string(FamilyKind k);

// Generative description of the n x d martingale-difference array.
struct FamilySpec {
    FamilyKind kind = FamilyKind::rademacher;
    int n = 0;
    int d = 0;
    // Base noise for martingale_scaled; ignored otherwise.
    FamilyKind base = FamilyKind::rademacher;
    // Per-entry variances: empty = all 1, size d = per layer,
    // size n*d = per entry (row-major by time index).
    std::vector<double> sigma2;

    double sigma2_at(int i, int m) const;  // 0-based (time, layer)
    double sigma_at(int i, int m) const;
    bool independent() const { return kind != FamilyKind::martingale_scaled; }
    void validate() const;  // throws std::invalid_argument
};

// Exact L^p norm of one centered unit-variance draw. Closed forms for
// rademacher/gaussian/uniform; certified truncated series for the
// centered Poisson. martingale_scaled has no single law and is rejected.
double mu_exact(FamilyKind kind, double p);

// mu(centered_poisson, p) * (e ln p) / p, evaluated in log space.
// Documents the convergence of the Poisson norm to its p/(e ln p)
// asymptote; requires p >= 8.
double poisson_asymptotic_ratio(double p);

// L^p norm of a product of d independent centered-Poisson(1) draws.
double product_moment(int d, double p);

// max over the grid of mu(d*p) / mu(p); finite for all built-in kinds.
double regular_variation_check(FamilyKind kind, int d,
                               const std::vector<double>& p_grid);

// Per-layer moment envelopes mu_m(p) for a family spec, with the two
// product profiles (layer moments at order d*p vs order p) and their
// variance-normalized (tilde) variants. For martingale_scaled the
// per-entry factor h in [1/2, 1] gives mu_m <= sigma_max * mu_base and
// actual standard deviation >= sigma_min / 2; both envelopes are upper
// bounds, which is the safe direction for upper-bound checks.
class MomentProfile {
public:
    static MomentProfile from_spec(const FamilySpec& spec);

    double mu(int m, double p) const;        // layer envelope, 0-based m
    double mu_tilde(int m, double p) const;  // mu / sigma_floor
    double v(double p) const;                // prod_m mu_m(d*p)
    double w(double p) const;                // prod_m mu_m(p)
    double v_tilde(double p) const;
    double w_tilde(double p) const;
    int degree() const { return d_; }

private:
    FamilyKind mu_kind_ = FamilyKind::rademacher;
    int d_ = 0;
    std::vector<double> sigma_max_;    // per layer
    std::vector<double> sigma_floor_;  // per layer, halved for scaled kind
};

}  // namespace polymart
