#include "polymart/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "polymart/bounds.hpp"
#include "polymart/parallel.hpp"
#include "polymart/paths.hpp"
#include "polymart/rng.hpp"

namespace polymart {

namespace {

constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

struct LogMoments {
    double lmax = -std::numeric_limits<double>::infinity();
    double mean = 0.0;  // of z_k = exp(p (ln|x_k| - lmax)), zeros included
    double var = 0.0;
};

LogMoments log_moments(std::span<const double> samples, double p) {
    LogMoments lm;
    for (double x : samples)
        if (x != 0.0) lm.lmax = std::max(lm.lmax, std::log(std::fabs(x)));
    if (!std::isfinite(lm.lmax)) return lm;  // all zeros
    const double n = static_cast<double>(samples.size());
    double acc = 0.0, comp = 0.0;
    for (double x : samples) {
        const double z =
            x == 0.0 ? 0.0 : std::exp(p * (std::log(std::fabs(x)) - lm.lmax));
        const double t = z - comp;
        const double next = acc + t;
        comp = (next - acc) - t;
        acc = next;
    }
    lm.mean = acc / n;
    double vacc = 0.0;
    for (double x : samples) {
        const double z =
            x == 0.0 ? 0.0 : std::exp(p * (std::log(std::fabs(x)) - lm.lmax));
        vacc += (z - lm.mean) * (z - lm.mean);
    }
    lm.var = samples.size() > 1 ? vacc / (n - 1.0) : 0.0;
    return lm;
}

void require_norm_args(std::span<const double> samples, double p) {
    if (samples.empty()) throw std::invalid_argument("empty sample vector");
    if (!(p >= 2.0)) throw std::domain_error("norm order must be >= 2");
}

}  // namespace

double lp_norm(std::span<const double> samples, double p) {
    require_norm_args(samples, p);
    const LogMoments lm = log_moments(samples, p);
    if (!std::isfinite(lm.lmax) || lm.mean <= 0.0) return 0.0;
    return std::exp(lm.lmax + std::log(lm.mean) / p);
}

McNorm lp_norm_mc(std::span<const double> samples, double p) {
    require_norm_args(samples, p);
    const LogMoments lm = log_moments(samples, p);
    if (!std::isfinite(lm.lmax) || lm.mean <= 0.0) return {0.0, 0.0};
    const double value = std::exp(lm.lmax + std::log(lm.mean) / p);
    // Delta method through the 1/p root: rel err of the mean, divided by p.
    const double rel =
        std::sqrt(lm.var / static_cast<double>(samples.size())) / lm.mean / p;
    return {value, rel};
}

namespace {

// Random separable direction in B, keyed by (seed, direction id).
std::vector<std::vector<double>> random_direction(int d, int n,
                                                  std::uint64_t seed, int id) {
    rng::Stream s(seed, rng::tag_direction, static_cast<std::uint64_t>(id));
    std::vector<std::vector<double>> betas(
        static_cast<std::size_t>(d),
        std::vector<double>(static_cast<std::size_t>(n)));
    for (auto& layer : betas)
        for (auto& b : layer) b = 2.0 * s.u01() - 1.0;
    return betas;
}

std::vector<std::vector<double>> direction_betas(const FamilySpec& spec,
                                                 std::uint64_t seed, int id) {
    if (id == 0) {
        const WeightSpec ones = normalize_to_B(ones_weights(spec.d, spec.n));
        return ones.betas;
    }
    const WeightSpec w =
        normalize_to_B(separable_weights(random_direction(spec.d, spec.n, seed, id)));
    return w.betas;
}

std::vector<double> evaluate_batch(const PathBatch& batch,
                                   const std::vector<std::vector<double>>& betas) {
    std::vector<double> q(static_cast<std::size_t>(batch.paths));
    parallel_for(batch.paths, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t k = lo; k < hi; ++k)
            q[static_cast<std::size_t>(k)] =
                q_separable_dp(batch.n, batch.d, batch.path(k), betas);
    });
    return q;
}

std::vector<BoundReport> sweep_impl(const FamilySpec& spec,
                                    std::span<const double> p_list,
                                    int w_directions, std::int64_t paths,
                                    std::uint64_t seed, bool normed) {
    spec.validate();
    if (paths < 1000)
        throw std::invalid_argument("Monte Carlo estimates need >= 1000 paths");
    if (w_directions < 1)
        throw std::invalid_argument("need at least one sampled direction");
    for (double p : p_list)
        if (!(p >= 4.0)) throw std::domain_error("bound orders must be >= 4");

    const MomentProfile profile = MomentProfile::from_spec(spec);
    const PathBatch batch = generate_batch(spec, paths, seed);
    const int ndirs = w_directions + 1;

    std::vector<BoundReport> reports(p_list.size());
    for (std::size_t ip = 0; ip < p_list.size(); ++ip) {
        BoundReport& rep = reports[ip];
        rep.kind = spec.kind;
        rep.d = spec.d;
        rep.n = spec.n;
        rep.p = p_list[ip];
        if (normed) {
            rep.bound_thm21 = gamma_d(spec.d) *
                              std::pow(rep.p / std::log(rep.p), spec.d) *
                              profile.v_tilde(rep.p);
            rep.bound_thm31 = spec.independent()
                                  ? kappa_d(spec.d) *
                                        std::pow(rep.p / std::log(rep.p), spec.d) *
                                        profile.w_tilde(rep.p)
                                  : quiet_nan;
        } else {
            rep.bound_thm21 = martingale_bound(rep.p, spec.d, profile.v(rep.p));
            rep.bound_thm31 = spec.independent()
                                  ? independent_bound(rep.p, spec.d, profile.w(rep.p))
                                  : quiet_nan;
        }
        rep.directions.reserve(static_cast<std::size_t>(ndirs));
    }

    for (int dir = 0; dir < ndirs; ++dir) {
        const auto betas = direction_betas(spec, seed, dir);
        std::vector<double> q = evaluate_batch(batch, betas);
        double scale = 1.0;
        if (normed) {
            double psi;
            if (spec.independent()) {
                psi = variance_independent(separable_weights(betas), spec);
            } else {
                // Sample variance; Q is centered by construction.
                double sq = 0.0, sm = 0.0;
                for (double v : q) {
                    sq += v * v;
                    sm += v;
                }
                const double n = static_cast<double>(q.size());
                psi = (sq - sm * sm / n) / (n - 1.0);
            }
            if (!(psi > 0.0)) throw std::domain_error("degenerate direction variance");
            scale = 1.0 / std::sqrt(psi);
        }
        for (std::size_t ip = 0; ip < p_list.size(); ++ip) {
            const McNorm mc = lp_norm_mc(q, p_list[ip]);
            reports[ip].directions.push_back(
                {dir, mc.value * scale, mc.rel_err});
        }
    }

    for (BoundReport& rep : reports) {
        const auto best = std::max_element(
            rep.directions.begin(), rep.directions.end(),
            [](const DirectionResult& a, const DirectionResult& b) {
                return a.empirical < b.empirical;
            });
        rep.empirical_max = best->empirical;
        rep.mc_err_at_max = best->mc_err;
        rep.ratio = rep.empirical_max / rep.bound_thm21;
    }
    return reports;
}

}  // namespace

std::vector<BoundReport> estimate_U_sweep(const FamilySpec& spec,
                                          std::span<const double> p_list,
                                          int w_directions, std::int64_t paths,
                                          std::uint64_t seed) {
    return sweep_impl(spec, p_list, w_directions, paths, seed, false);
}

BoundReport estimate_U(const FamilySpec& spec, int w_directions, double p,
                       std::int64_t paths, std::uint64_t seed) {
    const double ps[] = {p};
    return estimate_U_sweep(spec, ps, w_directions, paths, seed).front();
}

std::vector<BoundReport> normed_report_sweep(const FamilySpec& spec,
                                             std::span<const double> p_list,
                                             int w_directions,
                                             std::int64_t paths,
                                             std::uint64_t seed) {
    return sweep_impl(spec, p_list, w_directions, paths, seed, true);
}

Decomposition osekowski_decomposition(const FamilySpec& spec, int n, double p,
                                      std::int64_t paths, std::uint64_t seed) {
    if (spec.d != 1)
        throw std::invalid_argument("the decomposition applies to d = 1 rows only");
    FamilySpec local = spec;
    local.n = n;
    local.validate();
    if (paths < 1000)
        throw std::invalid_argument("Monte Carlo estimates need >= 1000 paths");
    if (!(p >= 4.0)) throw std::domain_error("decomposition order must be >= 4");

    const PathBatch batch = generate_batch(local, paths, seed);
    std::vector<double> sums(static_cast<std::size_t>(paths));
    std::vector<double> thetas(static_cast<std::size_t>(paths));
    std::vector<double> inner(static_cast<std::size_t>(paths));
    parallel_for(paths, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t k = lo; k < hi; ++k) {
            const double* row = batch.path(k);
            const double* hk = batch.path_h(k);
            double s = 0.0, th2 = 0.0, pw = 0.0;
            for (int i = 0; i < n; ++i) {
                s += row[i];
                // analytic conditional variance: h_i^2 sigma_i^2
                th2 += hk[i] * hk[i] * local.sigma2_at(i, 0);
                pw += std::pow(std::fabs(row[i]), p);
            }
            sums[static_cast<std::size_t>(k)] = s;
            thetas[static_cast<std::size_t>(k)] = std::sqrt(th2);
            inner[static_cast<std::size_t>(k)] = std::pow(pw, 1.0 / p);
        }
    });

    Decomposition out{};
    const McNorm lhs = lp_norm_mc(sums, p);
    out.lhs = lhs.value;
    out.lhs_rel_err = lhs.rel_err;
    out.s1 = lp_norm(thetas, p);
    out.s2 = lp_norm(inner, p);
    out.rhs = os_function(p) * (out.s1 + out.s2);

    const FamilyKind mu_kind =
        local.independent() ? local.kind : local.base;
    std::vector<double> mus(static_cast<std::size_t>(n));
    std::vector<double> unit(static_cast<std::size_t>(n), 1.0);
    for (int i = 0; i < n; ++i)
        mus[static_cast<std::size_t>(i)] =
            local.sigma_at(i, 0) * mu_exact(mu_kind, p);
    out.weighted_rhs = weighted_sum_bound(p, unit, mus);
    return out;
}

TailCurve empirical_tail(std::span<const double> samples,
                         std::span<const double> x_grid, double z) {
    if (x_grid.empty()) throw std::invalid_argument("empty tail grid");
    if (samples.empty()) throw std::invalid_argument("empty sample vector");
    for (std::size_t i = 1; i < x_grid.size(); ++i)
        if (!(x_grid[i] > x_grid[i - 1]))
            throw std::invalid_argument("tail grid must be strictly ascending");

    std::vector<double> mags(samples.begin(), samples.end());
    for (double& v : mags) v = std::fabs(v);
    std::sort(mags.begin(), mags.end());

    TailCurve curve;
    const double n = static_cast<double>(mags.size());
    const double z2 = z * z;
    for (double x : x_grid) {
        const auto it = std::lower_bound(mags.begin(), mags.end(), x);
        const double frac =
            static_cast<double>(mags.end() - it) / n;
        const double denom = 1.0 + z2 / n;
        const double center = (frac + z2 / (2.0 * n)) / denom;
        const double half =
            z * std::sqrt(frac * (1.0 - frac) / n + z2 / (4.0 * n * n)) / denom;
        curve.x.push_back(x);
        curve.fraction.push_back(frac);
        curve.lo.push_back(std::max(0.0, center - half));
        curve.hi.push_back(std::min(1.0, center + half));
    }
    return curve;
}

}  // namespace polymart
