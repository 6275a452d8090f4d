#include "polymart/gls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace polymart {

namespace {

constexpr double golden = 0.6180339887498949;

void require_x(double x) {
    if (!(x > std::numbers::e_v<double>))
        throw std::domain_error("tail laws are defined for x > e only");
}

// Golden-section minimizer on [a, b]; f unimodal on the bracket.
template <class F>
double golden_min(F&& f, double a, double b, double rel_tol) {
    double c = b - golden * (b - a);
    double d = a + golden * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > rel_tol * std::max(1.0, std::fabs(a))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - golden * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + golden * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Adaptive Simpson on [a, b] for a smooth integrand bounded by ~1.
inline double simpson_step(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adapt(F&& f, double a, double fa, double b, double fb, double fm,
             double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_step(a, fa, m, fm, flm);
    const double right = simpson_step(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, flm, left, 0.5 * eps, depth - 1) +
           adapt(f, m, fm, b, fb, frm, right, 0.5 * eps, depth - 1);
}

template <class F>
double integrate(F&& f, double a, double b, double eps) {
    if (!(b > a)) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return adapt(f, a, fa, b, fb, fm, simpson_step(a, fa, b, fb, fm), eps, 40);
}

}  // namespace

double TailParams::ln_tail(double x) const {
    require_x(x);
    if (!std::isfinite(c1)) return -std::numeric_limits<double>::infinity();
    return -c1 * std::pow(x, q) * std::pow(std::log(x), -q * r);
}

double TailParams::tail(double x) const { return std::exp(ln_tail(x)); }

double MomentGrowth::ln_psi(double p) const {
    return std::log(c) + a * std::log(p) + s * std::log(std::log(p));
}

std::pair<double, double> theorem41_exponents(int d, double q, double r) {
    if (d < 1) throw std::domain_error("degree must be >= 1");
    if (!(q > 0.0)) throw std::domain_error("tail exponent q must be positive");
    const double denom = d * q + 1.0;
    return {q / denom, -q * (r - d) / denom};
}

double tail_to_moment(const TailParams& t, double p) {
    if (!(p >= 4.0)) throw std::domain_error("moment order must be >= 4");
    if (!std::isfinite(t.c1)) return std::numbers::e_v<double>;  // bounded by e
    if (!(t.c1 > 0.0) || !(t.q > 0.0))
        throw std::domain_error("tail parameters need c1 > 0 and q > 0");

    // In u = ln x coordinates the integral is int_1^inf exp(g(u)) du with
    // g(u) = ln p + p u - c1 e^{qu} u^{-q r}.
    const auto g = [&](double u) {
        return std::log(p) + p * u - t.c1 * std::exp(t.q * u) * std::pow(u, -t.q * t.r);
    };
    // Bracket the mode: grow the right end until the exponent has dropped
    // far below the best value seen.
    double u_hi = 2.0;
    double best = std::max(g(1.0), g(u_hi));
    while (g(u_hi) > best - 200.0) {
        u_hi *= 2.0;
        best = std::max(best, g(u_hi));
        if (u_hi > 1e9)
            throw std::runtime_error("tail integral fails to localize (bad parameters)");
    }
    const double u_star =
        golden_min([&](double u) { return -g(u); }, 1.0, u_hi, 1e-12);
    const double g_star = g(u_star);

    // Truncate where the integrand is ~1e-20 of its peak.
    double u_cut = std::max(u_star * 2.0, 4.0);
    while (g(u_cut) > g_star - 46.0) u_cut *= 1.5;
    const auto f = [&](double u) { return std::exp(g(u) - g_star); };
    const double j =
        integrate(f, 1.0, u_star, 1e-11) + integrate(f, u_star, u_cut, 1e-11);
    if (!(j >= 0.0) || !std::isfinite(j))
        throw std::runtime_error("tail integral did not converge");

    // result = (e^p + e^{g*} j)^{1/p}, assembled in log space.
    const double ln_i = g_star + std::log(std::max(j, 1e-300));
    const double m = std::max(p, ln_i);
    const double ln_sum = m + std::log(std::exp(p - m) + std::exp(ln_i - m));
    return std::exp(ln_sum / p);
}

MarkovPoint moment_to_tail_detail(const MomentGrowth& g, double x) {
    require_x(x);
    const double lx = std::log(x);
    const auto f = [&](double p) { return p * (g.ln_psi(p) - lx); };

    constexpr int npts = 400;
    constexpr double p_lo = 4.0, p_hi = 1e4;
    const double step = std::log(p_hi / p_lo) / (npts - 1);
    int best = 0;
    double fbest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < npts; ++i) {
        const double fp = f(p_lo * std::exp(step * i));
        if (fp < fbest) {
            fbest = fp;
            best = i;
        }
    }
    const double a = p_lo * std::exp(step * std::max(best - 1, 0));
    const double b = p_lo * std::exp(step * std::min(best + 1, npts - 1));
    const double p_star = golden_min(f, a, b, 1e-13);
    MarkovPoint out;
    out.p_star = p_star;
    out.at_floor = best == 0 || p_star <= p_lo * (1.0 + 1e-9);
    out.value = std::min(1.0, std::exp(f(p_star)));
    return out;
}

double moment_to_tail(const MomentGrowth& g, double x) {
    return moment_to_tail_detail(g, x).value;
}

MomentGrowth product_growth(int d, double q, double r, double c) {
    if (d < 1) throw std::domain_error("degree must be >= 1");
    if (!(q > 0.0)) throw std::domain_error("tail exponent q must be positive");
    return MomentGrowth{c, d + 1.0 / q, r - d};
}

MarkovCurve markov_tail_curve(const MomentGrowth& g, std::span<const double> xs,
                              bool drop_floor) {
    MarkovCurve curve;
    curve.x.reserve(xs.size());
    curve.t.reserve(xs.size());
    for (double x : xs) {
        const MarkovPoint pt = moment_to_tail_detail(g, x);
        if (drop_floor && pt.at_floor) continue;
        curve.x.push_back(x);
        curve.t.push_back(pt.value);
    }
    return curve;
}

std::vector<double> log_grid(double lo, double hi, int npts) {
    if (!(lo > 0.0) || !(hi > lo) || npts < 2)
        throw std::invalid_argument("log grid needs 0 < lo < hi and >= 2 points");
    std::vector<double> xs(static_cast<std::size_t>(npts));
    const double step = std::log(hi / lo) / (npts - 1);
    for (int i = 0; i < npts; ++i)
        xs[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
    return xs;
}

namespace {

struct FitData {
    std::vector<double> lx;   // ln x
    std::vector<double> llx;  // ln ln x
    std::vector<double> y;    // ln(-ln T)
};

FitData usable_points(std::span<const double> xs, std::span<const double> tails) {
    if (xs.size() != tails.size())
        throw std::invalid_argument("x grid and tail values must have equal length");
    FitData d;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i], t = tails[i];
        if (!(x > std::numbers::e_v<double>) || !std::isfinite(t)) continue;
        if (!(t > 0.0) || !(t < 1.0)) continue;  // clamped or empty cells
        d.lx.push_back(std::log(x));
        d.llx.push_back(std::log(std::log(x)));
        d.y.push_back(std::log(-std::log(t)));
    }
    if (d.lx.size() < 8)
        throw std::invalid_argument(
            "need at least 8 informative tail points (0 < T < 1, x > e)");
    return d;
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

TailBoundShape finish_fit(const FitData& d, double alpha, double beta) {
    TailBoundShape shape;
    shape.alpha = alpha;
    shape.beta = beta;
    double c = 0.0;
    for (std::size_t i = 0; i < d.y.size(); ++i)
        c += d.y[i] - alpha * d.lx[i] - beta * d.llx[i];
    c /= static_cast<double>(d.y.size());
    shape.c2 = std::exp(c);
    double rss = 0.0;
    for (std::size_t i = 0; i < d.y.size(); ++i) {
        const double e = d.y[i] - (c + alpha * d.lx[i] + beta * d.llx[i]);
        rss += e * e;
    }
    shape.residual = std::sqrt(rss / static_cast<double>(d.y.size()));
    return shape;
}

TailBoundShape fit_log_log_ls(const FitData& d) {
    // Centered two-regressor least squares of y on (ln x, ln ln x).
    const double m1 = mean(d.lx), m2 = mean(d.llx), my = mean(d.y);
    long double s11 = 0, s12 = 0, s22 = 0, s1y = 0, s2y = 0;
    for (std::size_t i = 0; i < d.y.size(); ++i) {
        const long double a = d.lx[i] - m1, b = d.llx[i] - m2, yy = d.y[i] - my;
        s11 += a * a;
        s12 += a * b;
        s22 += b * b;
        s1y += a * yy;
        s2y += b * yy;
    }
    const long double det = s11 * s22 - s12 * s12;
    if (!(det > 0) || !std::isfinite(static_cast<double>(det)))
        throw std::domain_error("degenerate tail grid: collinear regressors");
    const double alpha = static_cast<double>((s1y * s22 - s2y * s12) / det);
    const double beta = static_cast<double>((s2y * s11 - s1y * s12) / det);
    return finish_fit(d, alpha, beta);
}

TailBoundShape fit_inverse_slope(const FitData& d) {
    // Finite-difference log-log slopes v; on Markov envelope curves
    // 1/v = 1/alpha + (r-d)/ln p*(x), and 1/ln p* ~ const / ln x, so a
    // weighted line of 1/v against u = 1/ln x has intercept 1/alpha.
    std::vector<double> z, u, wgt;
    for (std::size_t i = 0; i + 1 < d.y.size(); ++i) {
        const double dx = d.lx[i + 1] - d.lx[i];
        if (!(dx > 0.0)) continue;
        const double v = (d.y[i + 1] - d.y[i]) / dx;
        if (!(v > 0.0) || !std::isfinite(v)) continue;
        const double um = 2.0 / (d.lx[i] + d.lx[i + 1]);
        z.push_back(1.0 / v);
        u.push_back(um);
        wgt.push_back(1.0 / (um * um));
    }
    if (z.size() < 4)
        throw std::domain_error("tail curve too flat or noisy for slope extraction");
    long double sw = 0, su = 0, suu = 0, sz = 0, suz = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        sw += wgt[i];
        su += wgt[i] * u[i];
        suu += wgt[i] * u[i] * u[i];
        sz += wgt[i] * z[i];
        suz += wgt[i] * u[i] * z[i];
    }
    const long double det = sw * suu - su * su;
    if (!(det > 0))
        throw std::domain_error("degenerate tail grid for slope extraction");
    const double intercept = static_cast<double>((sz * suu - suz * su) / det);
    const double slope = static_cast<double>((sw * suz - su * sz) / det);
    if (!(intercept > 0.0))
        throw std::domain_error("slope regression produced a non-positive exponent");
    const double alpha = 1.0 / intercept;
    const double beta = -slope * alpha * alpha;
    return finish_fit(d, alpha, beta);
}

}  // namespace

TailBoundShape fit_tail_shape(std::span<const double> xs,
                              std::span<const double> tails, FitMethod method) {
    const FitData d = usable_points(xs, tails);
    return method == FitMethod::log_log_ls ? fit_log_log_ls(d)
                                           : fit_inverse_slope(d);
}

}  // namespace polymart
