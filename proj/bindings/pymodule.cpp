#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "polymart/bounds.hpp"
#include "polymart/estimate.hpp"
#include "polymart/families.hpp"
#include "polymart/gls.hpp"
#include "polymart/paths.hpp"
#include "polymart/polyeval.hpp"

namespace py = pybind11;
using namespace polymart;

namespace {

py::dict report_to_dict(const BoundReport& rep) {
    py::list dirs;
    for (const DirectionResult& d : rep.directions)
        dirs.append(py::make_tuple(d.direction_id, d.empirical, d.mc_err));
    py::dict out;
    out["family"] = std::string(to_string(rep.kind));
    out["d"] = rep.d;
    out["n"] = rep.n;
    out["p"] = rep.p;
    out["bound_thm21"] = rep.bound_thm21;
    out["bound_thm31"] = rep.bound_thm31;
    out["directions"] = dirs;
    out["empirical_max"] = rep.empirical_max;
    out["ratio"] = rep.ratio;
    out["mc_err_at_max"] = rep.mc_err_at_max;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "sharp moment and tail bounds for discrete-time polynomial "
              "martingales";

    m.attr("k_rosenthal") = k_rosenthal;
    m.def("os_function", &os_function, py::arg("p"),
          py::arg("extended_domain") = false);
    m.def(
        "os_constant",
        [](const std::vector<double>& grid) {
            const OsConstant c =
                grid.empty() ? os_constant(default_os_grid()) : os_constant(grid);
            return py::make_tuple(c.value, c.argmax);
        },
        py::arg("p_grid") = std::vector<double>{},
        "maximum of Os(p)/(p/ln p) with its maximizer; default grid "
        "[4, 200] step 0.01");
    m.def("k_os", &k_os);
    m.def("gamma_d", &gamma_d, py::arg("d"));
    m.def("gamma_upper", &gamma_upper, py::arg("d"));
    m.def("kappa_d", &kappa_d, py::arg("d"));
    m.def("kappa_upper", &kappa_upper, py::arg("d"));
    m.def("martingale_bound", &martingale_bound, py::arg("p"), py::arg("d"),
          py::arg("v"));
    m.def("independent_bound", &independent_bound, py::arg("p"), py::arg("d"),
          py::arg("w"));
    m.def(
        "weighted_sum_bound",
        [](double p, const std::vector<double>& weights,
           const std::vector<double>& mus) {
            return weighted_sum_bound(p, weights, mus);
        },
        py::arg("p"), py::arg("weights"), py::arg("mus"));
    m.def("lower_shape", &lower_shape, py::arg("p"), py::arg("d"));

    m.def(
        "mu_exact",
        [](const std::string& kind, double p) {
            return mu_exact(family_from_string(kind), p);
        },
        py::arg("kind"), py::arg("p"));
    m.def("poisson_asymptotic_ratio", &poisson_asymptotic_ratio, py::arg("p"));
    m.def("product_moment", &product_moment, py::arg("d"), py::arg("p"));

    m.def("theorem41_exponents", &theorem41_exponents, py::arg("d"),
          py::arg("q"), py::arg("r"));
    m.def(
        "tail_to_moment",
        [](double c1, double q, double r, double p) {
            return tail_to_moment(TailParams{c1, q, r}, p);
        },
        py::arg("c1"), py::arg("q"), py::arg("r"), py::arg("p"));
    m.def(
        "moment_to_tail",
        [](double c, double a, double s, double x) {
            return moment_to_tail(MomentGrowth{c, a, s}, x);
        },
        py::arg("c"), py::arg("a"), py::arg("s"), py::arg("x"),
        "inf over p >= 4 of (c p^a (ln p)^s / x)^p, clamped to 1");
    m.def(
        "markov_tail_curve",
        [](double c, double a, double s, const std::vector<double>& xs,
           bool drop_floor) {
            const MarkovCurve curve =
                markov_tail_curve(MomentGrowth{c, a, s}, xs, drop_floor);
            return py::make_tuple(curve.x, curve.t);
        },
        py::arg("c"), py::arg("a"), py::arg("s"), py::arg("xs"),
        py::arg("drop_floor") = true);
    m.def("log_grid", &log_grid, py::arg("lo"), py::arg("hi"), py::arg("npts"));
    m.def(
        "fit_tail_shape",
        [](const std::vector<double>& xs, const std::vector<double>& tails,
           const std::string& method) {
            FitMethod fm;
            if (method == "log_log_ls")
                fm = FitMethod::log_log_ls;
            else if (method == "inverse_slope")
                fm = FitMethod::inverse_slope;
            else
                throw std::invalid_argument("unknown fit method: " + method);
            const TailBoundShape s = fit_tail_shape(xs, tails, fm);
            py::dict out;
            out["alpha"] = s.alpha;
            out["beta"] = s.beta;
            out["c2"] = s.c2;
            out["residual"] = s.residual;
            return out;
        },
        py::arg("xs"), py::arg("tails"), py::arg("method") = "log_log_ls");

    py::class_<FamilySpec>(m, "FamilySpec")
        .def(py::init([](const std::string& kind, int n, int d,
                         const std::string& base, std::vector<double> sigma2) {
                 FamilySpec spec;
                 spec.kind = family_from_string(kind);
                 spec.n = n;
                 spec.d = d;
                 spec.base = family_from_string(base);
                 spec.sigma2 = std::move(sigma2);
                 spec.validate();
                 return spec;
             }),
             py::arg("kind"), py::arg("n"), py::arg("d"),
             py::arg("base") = "rademacher",
             py::arg("sigma2") = std::vector<double>{})
        .def_property_readonly(
            "kind",
            [](const FamilySpec& s) { return std::string(to_string(s.kind)); })
        .def_readonly("n", &FamilySpec::n)
        .def_readonly("d", &FamilySpec::d)
        .def_readonly("sigma2", &FamilySpec::sigma2)
        .def("independent", &FamilySpec::independent);

    py::class_<SamplePath>(m, "SamplePath")
        .def_readonly("n", &SamplePath::n)
        .def_readonly("d", &SamplePath::d)
        .def_readonly("entries", &SamplePath::entries)
        .def_readonly("h", &SamplePath::h)
        .def("at", &SamplePath::at, py::arg("i"), py::arg("m"));

    m.def("generate", &generate, py::arg("spec"), py::arg("path_id"),
          py::arg("seed"));
    m.def(
        "q_separable_dp",
        [](const SamplePath& path, const std::vector<std::vector<double>>& b) {
            return q_separable_dp(path, b);
        },
        py::arg("path"), py::arg("betas") = std::vector<std::vector<double>>{});
    m.def(
        "q_ones_naive",
        [](const SamplePath& path) {
            return q_naive(path, ones_weights(path.d, path.n));
        },
        py::arg("path"),
        "brute-force sum over all increasing tuples with unit weights");
    m.def("index_count", &index_count, py::arg("d"), py::arg("n"));
    m.def(
        "lp_norm",
        [](const std::vector<double>& samples, double p) {
            return lp_norm(samples, p);
        },
        py::arg("samples"), py::arg("p"));

    m.def(
        "estimate_U",
        [](const FamilySpec& spec, int w_directions, double p,
           std::int64_t paths, std::uint64_t seed) {
            BoundReport rep;
            {
                py::gil_scoped_release release;
                rep = estimate_U(spec, w_directions, p, paths, seed);
            }
            return report_to_dict(rep);
        },
        py::arg("spec"), py::arg("w_directions"), py::arg("p"),
        py::arg("paths"), py::arg("seed"));
    m.def(
        "osekowski_decomposition",
        [](const FamilySpec& spec, int n, double p, std::int64_t paths,
           std::uint64_t seed) {
            Decomposition dec;
            {
                py::gil_scoped_release release;
                dec = osekowski_decomposition(spec, n, p, paths, seed);
            }
            py::dict out;
            out["lhs"] = dec.lhs;
            out["s1"] = dec.s1;
            out["s2"] = dec.s2;
            out["rhs"] = dec.rhs;
            out["weighted_rhs"] = dec.weighted_rhs;
            out["lhs_rel_err"] = dec.lhs_rel_err;
            return out;
        },
        py::arg("spec"), py::arg("n"), py::arg("p"), py::arg("paths"),
        py::arg("seed"));
    m.def(
        "empirical_tail",
        [](const std::vector<double>& samples, const std::vector<double>& xs,
           double z) {
            const TailCurve curve = empirical_tail(samples, xs, z);
            py::dict out;
            out["x"] = curve.x;
            out["fraction"] = curve.fraction;
            out["lo"] = curve.lo;
            out["hi"] = curve.hi;
            return out;
        },
        py::arg("samples"), py::arg("x_grid"), py::arg("z") = 3.0);
}
