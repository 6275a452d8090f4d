#include "polymart/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace polymart {

namespace {

void require_order(double p, bool extended) {
    if (!std::isfinite(p)) throw std::domain_error("moment order must be finite");
    const double floor = extended ? 2.0 : 4.0;
    if (p <= 2.0)
        throw std::domain_error("Os(p) is singular at p = 2 and undefined below");
    if (p < floor)
        throw std::domain_error(
            "moment order below 4 (pass extended_domain to explore 2 < p < 4)");
}

void require_degree(int d) {
    if (d < 1) throw std::domain_error("degree must be >= 1");
}

}  // namespace

double os_function(double p, bool extended_domain) {
    require_order(p, extended_domain);
    return 4.0 * std::sqrt(2.0) * std::pow(p / 4.0 + 1.0, 1.0 / p) *
           (1.0 + p / std::log(p / 2.0));
}

OsConstant os_constant(const std::vector<double>& p_grid) {
    if (p_grid.empty()) throw std::domain_error("empty grid");
    OsConstant best{-1.0, 0.0};
    for (double p : p_grid) {
        if (p < 4.0) throw std::domain_error("grid point below 4");
        const double ratio = os_function(p) * std::log(p) / p;
        if (ratio > best.value) best = {ratio, p};
    }
    return best;
}

std::vector<double> default_os_grid() {
    std::vector<double> grid;
    grid.reserve(19601);
    for (int k = 0; k <= 19600; ++k) grid.push_back(4.0 + 0.01 * k);
    return grid;
}

double k_os() {
    static const double value = [] { return os_constant(default_os_grid()).value; }();
    return value;
}

double gamma_d(int d) {
    require_degree(d);
    double g = k_os();
    for (int j = 1; j < d; ++j) g *= k_os() * std::pow(1.0 + 1.0 / j, j);
    return g;
}

double gamma_upper(int d) {
    require_degree(d);
    return std::pow(k_os(), d) * std::exp(static_cast<double>(d - 1));
}

double kappa_d(int d) {
    require_degree(d);
    double g = k_rosenthal;
    for (int j = 1; j < d; ++j) g *= k_os() * std::pow(1.0 + 1.0 / j, j);
    return g;
}

double kappa_upper(int d) {
    require_degree(d);
    return k_rosenthal * std::pow(k_os() * std::exp(1.0), d - 1);
}

namespace {

double shape_times(double p, int d, double factor, double moment) {
    require_order(p, false);
    require_degree(d);
    if (!(moment >= 0.0) || !std::isfinite(moment))
        throw std::domain_error("moment product must be finite and >= 0");
    return factor * std::pow(p / std::log(p), d) * moment;
}

}  // namespace

double martingale_bound(double p, int d, double v) {
    return shape_times(p, d, gamma_d(d), v);
}

double independent_bound(double p, int d, double w) {
    return shape_times(p, d, kappa_d(d), w);
}

double weighted_sum_bound(double p, std::span<const double> weights,
                          std::span<const double> mus) {
    require_order(p, false);
    if (weights.size() != mus.size() || weights.empty())
        throw std::invalid_argument("weights and moments must have equal length >= 1");
    double acc = 0.0, comp = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (!(mus[k] >= 0.0)) throw std::domain_error("negative moment entry");
        const double term = weights[k] * weights[k] * mus[k] * mus[k] - comp;
        const double next = acc + term;
        comp = (next - acc) - term;
        acc = next;
    }
    return k_os() * (p / std::log(p)) * std::sqrt(acc);
}

double lower_shape(double p, int d) {
    require_order(p, false);
    if (d < 0) throw std::domain_error("degree must be >= 0");
    if (d == 0) return 1.0;
    return std::pow(p / std::log(p), d);
}

}  // namespace polymart
