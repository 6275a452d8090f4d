#include "polymart/polyeval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "polymart/rng.hpp"

namespace polymart {

namespace {

struct KahanSum {
    double acc = 0.0, comp = 0.0;
    void add(double term) {
        const double t = term - comp;
        const double next = acc + t;
        comp = (next - acc) - t;
        acc = next;
    }
};

}  // namespace

void WeightSpec::validate() const {
    if (d < 1 || n < 0) throw std::invalid_argument("weights need d >= 1, n >= 0");
    switch (form) {
        case WeightForm::ones:
            return;
        case WeightForm::separable:
            if (betas.size() != static_cast<std::size_t>(d))
                throw std::invalid_argument("separable weights need d beta vectors");
            for (const auto& b : betas)
                if (b.size() != static_cast<std::size_t>(n))
                    throw std::invalid_argument("beta vector length must equal n");
            return;
        case WeightForm::dense:
            for (const auto& [idx, value] : entries) {
                if (idx.size() != static_cast<std::size_t>(d))
                    throw std::invalid_argument("dense key arity must equal d");
                int prev = -1;
                for (int i : idx) {
                    if (i <= prev || i >= n)
                        throw std::invalid_argument(
                            "dense keys must be strictly increasing within [0, n)");
                    prev = i;
                }
                if (!std::isfinite(value))
                    throw std::invalid_argument("dense weight value must be finite");
            }
            return;
    }
    throw std::invalid_argument("unknown weight form");
}

std::uint64_t index_count(int d, int n) {
    if (d < 1) throw std::invalid_argument("degree must be >= 1");
    if (n < d) return 0;
    std::uint64_t c = 1;
    for (int j = 0; j < d; ++j) {
        const std::uint64_t num = static_cast<std::uint64_t>(n - j);
        if (c > std::numeric_limits<std::uint64_t>::max() / num)
            throw std::overflow_error("index set cardinality overflows 64 bits");
        c = c * num / (static_cast<std::uint64_t>(j) + 1);
    }
    return c;
}

WeightSpec ones_weights(int d, int n) {
    WeightSpec w;
    w.form = WeightForm::ones;
    w.d = d;
    w.n = n;
    w.validate();
    return w;
}

WeightSpec separable_weights(std::vector<std::vector<double>> betas) {
    WeightSpec w;
    w.form = WeightForm::separable;
    w.d = static_cast<int>(betas.size());
    w.n = betas.empty() ? 0 : static_cast<int>(betas.front().size());
    w.betas = std::move(betas);
    w.validate();
    return w;
}

double weight_at(const WeightSpec& w, std::span<const int> idx) {
    switch (w.form) {
        case WeightForm::ones:
            return 1.0;
        case WeightForm::separable: {
            double prod = 1.0;
            for (int m = 0; m < w.d; ++m)
                prod *= w.betas[static_cast<std::size_t>(m)]
                               [static_cast<std::size_t>(idx[static_cast<std::size_t>(m)])];
            return prod;
        }
        case WeightForm::dense: {
            auto it = std::find_if(w.entries.begin(), w.entries.end(),
                                   [&](const auto& e) {
                                       return std::equal(e.first.begin(), e.first.end(),
                                                         idx.begin(), idx.end());
                                   });
            return it == w.entries.end() ? 0.0 : it->second;
        }
    }
    throw std::invalid_argument("unknown weight form");
}

double WeightSpec::norm() const {
    validate();
    KahanSum sum;
    switch (form) {
        case WeightForm::ones:
            return std::sqrt(static_cast<double>(index_count(d, n)));
        case WeightForm::separable: {
            // sum over I(d,n) of prod beta^2 = the DP on squared betas
            // with all-ones entries.
            std::vector<std::vector<double>> sq(betas.size());
            for (std::size_t m = 0; m < betas.size(); ++m) {
                sq[m].resize(betas[m].size());
                for (std::size_t i = 0; i < betas[m].size(); ++i)
                    sq[m][i] = betas[m][i] * betas[m][i];
            }
            std::vector<double> ones_path(static_cast<std::size_t>(n) * d, 1.0);
            return std::sqrt(q_separable_dp(n, d, ones_path.data(), sq));
        }
        case WeightForm::dense:
            for (const auto& [idx, value] : entries) sum.add(value * value);
            return std::sqrt(sum.acc);
    }
    throw std::invalid_argument("unknown weight form");
}

WeightSpec normalize_to_B(const WeightSpec& w) {
    const double nrm = w.norm();
    if (!(nrm > 0.0)) throw std::domain_error("cannot normalize a zero weight tensor");
    WeightSpec out = w;
    switch (w.form) {
        case WeightForm::ones: {
            // becomes separable with equal per-layer factors nrm^{-1/d}
            out.form = WeightForm::separable;
            const double beta = std::pow(nrm, -1.0 / w.d);
            out.betas.assign(static_cast<std::size_t>(w.d),
                             std::vector<double>(static_cast<std::size_t>(w.n), beta));
            break;
        }
        case WeightForm::separable:
            for (auto& b : out.betas[0]) b /= nrm;
            break;
        case WeightForm::dense:
            for (auto& [idx, value] : out.entries) value /= nrm;
            break;
    }
    return out;
}

double q_naive(const SamplePath& path, const WeightSpec& w, std::uint64_t cap) {
    w.validate();
    if (path.n != w.n || path.d != w.d)
        throw std::invalid_argument("path shape does not match weights");
    KahanSum sum;
    if (w.form == WeightForm::dense) {
        if (w.entries.size() > cap)
            throw std::length_error("dense weight list exceeds the enumeration cap");
        for (const auto& [idx, value] : w.entries) {
            double prod = value;
            for (int m = 0; m < w.d; ++m)
                prod *= path.at(idx[static_cast<std::size_t>(m)], m);
            sum.add(prod);
        }
        return sum.acc;
    }
    if (index_count(w.d, w.n) > cap)
        throw std::length_error(
            "index set too large for brute force; use the DP evaluator");
    for_each_index(w.d, w.n, [&](std::span<const int> idx) {
        double prod = 1.0;
        for (int m = 0; m < w.d; ++m) {
            const int i = idx[static_cast<std::size_t>(m)];
            prod *= path.at(i, m);
            if (w.form == WeightForm::separable)
                prod *= w.betas[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)];
        }
        sum.add(prod);
    });
    return sum.acc;
}

double q_separable_dp(int n, int d, const double* entries,
                      const std::vector<std::vector<double>>& betas) {
    if (!betas.empty() && betas.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("need one beta vector per layer");
    // S[m] holds S_m(k) while sweeping k; updating m from high to low
    // keeps the required S_{m-1}(k-1) value intact within one k step.
    std::vector<double> s(static_cast<std::size_t>(d) + 1, 0.0);
    s[0] = 1.0;
    for (int k = 0; k < n; ++k) {
        for (int m = std::min(d, k + 1); m >= 1; --m) {
            const double beta =
                betas.empty() ? 1.0
                              : betas[static_cast<std::size_t>(m - 1)]
                                     [static_cast<std::size_t>(k)];
            s[static_cast<std::size_t>(m)] +=
                beta * entries[static_cast<std::size_t>(k) * d + (m - 1)] *
                s[static_cast<std::size_t>(m - 1)];
        }
    }
    return s[static_cast<std::size_t>(d)];
}

double q_separable_dp(const SamplePath& path,
                      const std::vector<std::vector<double>>& betas) {
    return q_separable_dp(path.n, path.d, path.entries.data(), betas);
}

std::vector<double> q_separable_prefix(
    const SamplePath& path, const std::vector<std::vector<double>>& betas) {
    const int n = path.n, d = path.d;
    if (!betas.empty() && betas.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("need one beta vector per layer");
    std::vector<double> s(static_cast<std::size_t>(d) + 1, 0.0);
    s[0] = 1.0;
    std::vector<double> prefix(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        for (int m = std::min(d, k + 1); m >= 1; --m) {
            const double beta =
                betas.empty() ? 1.0
                              : betas[static_cast<std::size_t>(m - 1)]
                                     [static_cast<std::size_t>(k)];
            s[static_cast<std::size_t>(m)] +=
                beta * path.at(k, m - 1) * s[static_cast<std::size_t>(m - 1)];
        }
        prefix[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(d)];
    }
    return prefix;
}

double variance_independent(const WeightSpec& w, const FamilySpec& spec,
                            std::uint64_t cap) {
    w.validate();
    spec.validate();
    if (!spec.independent())
        throw std::invalid_argument(
            "analytic variance requires an independent family; estimate by "
            "Monte Carlo instead");
    if (spec.n != w.n || spec.d != w.d)
        throw std::invalid_argument("family shape does not match weights");
    std::vector<double> sig2(static_cast<std::size_t>(w.n) * w.d);
    for (int i = 0; i < w.n; ++i)
        for (int m = 0; m < w.d; ++m)
            sig2[static_cast<std::size_t>(i) * w.d + m] = spec.sigma2_at(i, m);
    switch (w.form) {
        case WeightForm::ones:
        case WeightForm::separable: {
            std::vector<std::vector<double>> sq;
            if (w.form == WeightForm::separable) {
                sq.resize(w.betas.size());
                for (std::size_t m = 0; m < w.betas.size(); ++m) {
                    sq[m].resize(w.betas[m].size());
                    for (std::size_t i = 0; i < w.betas[m].size(); ++i)
                        sq[m][i] = w.betas[m][i] * w.betas[m][i];
                }
            }
            return q_separable_dp(w.n, w.d, sig2.data(), sq);
        }
        case WeightForm::dense: {
            if (w.entries.size() > cap)
                throw std::length_error("dense weight list exceeds the enumeration cap");
            KahanSum sum;
            for (const auto& [idx, value] : w.entries) {
                double prod = value * value;
                for (int m = 0; m < w.d; ++m)
                    prod *= sig2[static_cast<std::size_t>(idx[static_cast<std::size_t>(m)]) *
                                     w.d + m];
                sum.add(prod);
            }
            return sum.acc;
        }
    }
    throw std::invalid_argument("unknown weight form");
}

PsiScan psi_ratio_scan(const FamilySpec& spec, const std::vector<int>& n_list,
                       int trials, std::uint64_t seed, std::int64_t mc_paths) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    PsiScan scan{std::numeric_limits<double>::infinity(), 0.0};
    for (int n : n_list) {
        FamilySpec local = spec;
        local.n = n;
        local.validate();
        for (int t = 0; t < trials; ++t) {
            rng::Stream s(seed, rng::tag_scan, static_cast<std::uint64_t>(n),
                          static_cast<std::uint64_t>(t));
            std::vector<std::vector<double>> betas(
                static_cast<std::size_t>(local.d),
                std::vector<double>(static_cast<std::size_t>(n)));
            for (auto& layer : betas)
                for (auto& b : layer) b = 2.0 * s.u01() - 1.0;
            const WeightSpec w = separable_weights(betas);
            const double nrm2 = w.norm() * w.norm();
            if (!(nrm2 > 0.0)) continue;
            double psi;
            if (local.independent()) {
                psi = variance_independent(w, local);
            } else {
                // Monte Carlo variance (E Q = 0 for centered differences).
                const PathBatch batch = generate_batch(
                    local, mc_paths, rng::chain(seed, static_cast<std::uint64_t>(t)));
                KahanSum sq;
                for (std::int64_t k = 0; k < batch.paths; ++k) {
                    const double qv = q_separable_dp(n, local.d, batch.path(k), betas);
                    sq.add(qv * qv);
                }
                psi = sq.acc / static_cast<double>(batch.paths);
            }
            const double ratio = psi / nrm2;
            scan.min_ratio = std::min(scan.min_ratio, ratio);
            scan.max_ratio = std::max(scan.max_ratio, ratio);
        }
    }
    return scan;
}

}  // namespace polymart
