#pragma once

#include <span>
#include <utility>
#include <vector>

namespace polymart {

// Tail law T(x) = exp(-c1 * x^q * (ln x)^{-q r}) for x > e.
// A non-finite c1 encodes the bounded-by-e limit (tail identically 0).
struct TailParams {
    double c1 = 1.0;
    double q = 1.0;
    double r = 0.0;

    double ln_tail(double x) const;
    double tail(double x) const;
};

// Moment growth psi(p) = c * p^a * (ln p)^s on p >= 4.
struct MomentGrowth {
    double c = 1.0;
    double a = 0.0;
    double s = 0.0;

    double ln_psi(double p) const;
};

// Fitted tail shape exp(-c2 * x^alpha * (ln x)^beta).
struct TailBoundShape {
    double alpha = 0.0;
    double beta = 0.0;
    double c2 = 0.0;
    double residual = 0.0;
};

// Exponent pair (q/(dq+1), -q(r-d)/(dq+1)) of the degree-d tail bound.
std::pair<double, double> theorem41_exponents(int d, double q, double r);

// Moment implied by a tail: (e^p + int_e^inf p x^{p-1} T(x) dx)^{1/p},
// integrated adaptively in log-x coordinates with a mode split.
double tail_to_moment(const TailParams& t, double p);

// Markov/Chernoff optimization T(x) <= inf_{p>=4} (psi(p)/x)^p over a
// log-spaced p-grid in [4, 1e4] with golden-section refinement, clamped
// to [0, 1]. Requires x > e.
double moment_to_tail(const MomentGrowth& g, double x);

struct MarkovPoint {
    double value;
    double p_star;    // optimizing moment order
    bool at_floor;    // argmin stuck at the p = 4 boundary
};
MarkovPoint moment_to_tail_detail(const MomentGrowth& g, double x);

// Tail-shape extraction from a curve (x_i, T_i):
//  - log_log_ls: least squares of ln(-ln T) against (1, ln x, ln ln x).
//    Exact on curves generated by the power-log model itself.
//  - inverse_slope: regression over the log-log slope. Finite-difference
//    slopes v of ln(-ln T) vs ln x satisfy 1/v = 1/alpha + (r-d)/ln p*(x)
//    exactly on Markov envelope curves, so regressing 1/v on 1/ln x
//    (weights (ln x)^2) and inverting the intercept removes the
//    slowly-varying bias that the plain fit cannot separate.
// Non-informative points (T <= 0, T >= 1, x <= e) are dropped; fewer
// than 8 usable points is an error.
enum class FitMethod { log_log_ls, inverse_slope };

TailBoundShape fit_tail_shape(std::span<const double> xs,
                              std::span<const double> tails,
                              FitMethod method = FitMethod::log_log_ls);

// Growth of the degree-d product built from per-factor growth p^{1/q}
// (ln p)^r: psi(p) = c * p^{d + 1/q} * (ln p)^{r - d}.
MomentGrowth product_growth(int d, double q, double r, double c = 1.0);

// Markov tail curve over a grid. With drop_floor (default), points whose
// optimizing order saturates the p = 4 domain cut are removed: there the
// curve is (psi(4)/x)^4 regardless of the growth exponents, so they carry
// no shape information and only bias the fit.
struct MarkovCurve {
    std::vector<double> x;
    std::vector<double> t;
};
MarkovCurve markov_tail_curve(const MomentGrowth& g, std::span<const double> xs,
                              bool drop_floor = true);

// npts log-spaced points spanning [lo, hi].
std::vector<double> log_grid(double lo, double hi, int npts);

}  // namespace polymart
