// Acceptance gate: nine checks, one [PASS]/[FAIL] line each, exit 0 iff
// all pass. Default profile uses 1e4 Monte Carlo paths; --full raises the
// simulation-backed checks to the 1e5-path table settings.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polymart/bounds.hpp"
#include "polymart/estimate.hpp"
#include "polymart/families.hpp"
#include "polymart/gls.hpp"
#include "polymart/paths.hpp"
#include "polymart/polyeval.hpp"

using namespace polymart;

namespace {

namespace fs = std::filesystem;

struct Outcome {
    bool pass;
    std::string detail;
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

FamilySpec make_spec(FamilyKind kind, int n, int d) {
    FamilySpec spec;
    spec.kind = kind;
    spec.n = n;
    spec.d = d;
    return spec;
}

// 1. pinned constants
Outcome criterion1() {
    const OsConstant c = os_constant(default_os_grid());
    const bool pass = std::abs(c.value - 15.7858) < 1e-3 && c.argmax == 4.0 &&
                      k_rosenthal == 0.6535;
    return {pass, "K_Os=" + fmt(c.value) + " at p=" + fmt(c.argmax) +
                      ", K_R=" + fmt(k_rosenthal)};
}

// 2. recursions below their closed-form majorants
Outcome criterion2() {
    const double e = std::exp(1.0);
    bool pass = true;
    double worst = 0.0;
    for (int d = 1; d <= 10; ++d) {
        const double g_ratio =
            gamma_d(d) / (std::pow(k_os(), d) * std::pow(e, d - 1));
        const double k_ratio =
            kappa_d(d) / (k_rosenthal * std::pow(k_os() * e, d - 1));
        worst = std::max({worst, g_ratio, k_ratio});
        pass = pass && g_ratio <= 1.0 + 1e-12 && k_ratio <= 1.0 + 1e-12;
    }
    return {pass, "max recursion/majorant ratio " + fmt(worst)};
}

// 3. dp evaluator vs brute force on randomized instances
Outcome criterion3() {
    std::mt19937_64 rng(321);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const FamilyKind kinds[] = {FamilyKind::rademacher, FamilyKind::gaussian,
                                FamilyKind::centered_poisson,
                                FamilyKind::uniform_centered,
                                FamilyKind::martingale_scaled};
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const int d = 1 + static_cast<int>(rng() % 4);
        const int n = d + static_cast<int>(rng() % (13 - d));
        const SamplePath path = generate(make_spec(kinds[t % 5], n, d),
                                         static_cast<std::uint64_t>(t), 17);
        std::vector<std::vector<double>> betas(
            static_cast<std::size_t>(d),
            std::vector<double>(static_cast<std::size_t>(n)));
        for (auto& row : betas)
            for (double& x : row) x = u(rng);
        const WeightSpec sep = separable_weights(betas);
        double brute;
        if (t % 2 == 0) {
            brute = q_naive(path, sep);
        } else {
            // rank-1 dense copy of the same tensor
            WeightSpec dense;
            dense.form = WeightForm::dense;
            dense.d = d;
            dense.n = n;
            for_each_index(d, n, [&](std::span<const int> idx) {
                dense.entries.emplace_back(
                    std::vector<int>(idx.begin(), idx.end()),
                    weight_at(sep, idx));
            });
            brute = q_naive(path, dense);
        }
        const double dp = q_separable_dp(path, betas);
        worst = std::max(worst,
                         std::abs(dp - brute) / std::max(1.0, std::abs(brute)));
    }
    return {worst <= 1e-10, "500 cases, worst relative gap " + fmt(worst)};
}

// 4. moment bounds dominate the Monte Carlo estimates
Outcome criterion4(std::int64_t paths, std::uint64_t seed) {
    const FamilyKind kinds[] = {FamilyKind::rademacher, FamilyKind::gaussian,
                                FamilyKind::centered_poisson,
                                FamilyKind::martingale_scaled};
    const std::vector<double> ps{4.0, 8.0, 12.0};
    bool pass = true;
    double worst_slack = 0.0, worst_ratio = 0.0;
    for (FamilyKind kind : kinds)
        for (int d : {1, 2, 3})
            for (int n : {10, 30}) {
                const auto reports =
                    estimate_U_sweep(make_spec(kind, n, d), ps, 20, paths, seed);
                for (const BoundReport& rep : reports)
                    for (const DirectionResult& dir : rep.directions) {
                        const double cap =
                            make_spec(kind, n, d).independent()
                                ? rep.bound_thm31
                                : rep.bound_thm21;
                        const double slack =
                            dir.empirical / (cap * (1.0 + 3.0 * dir.mc_err));
                        const double ratio = dir.empirical / rep.bound_thm21;
                        worst_slack = std::max(worst_slack, slack);
                        worst_ratio = std::max(worst_ratio, ratio);
                        pass = pass && slack <= 1.0 && ratio < 0.2;
                    }
            }
    return {pass, "1512 direction checks at " + std::to_string(paths) +
                      " paths; worst bound use " + fmt(worst_slack) +
                      ", worst ratio " + fmt(worst_ratio)};
}

// 5. one-dimensional decomposition inequalities
Outcome criterion5(std::int64_t paths, std::uint64_t seed) {
    bool pass = true;
    std::string detail;
    for (FamilyKind kind :
         {FamilyKind::rademacher, FamilyKind::martingale_scaled})
        for (int n : {16, 64})
            for (double p : {4.0, 8.0}) {
                const Decomposition dec = osekowski_decomposition(
                    make_spec(kind, n, 1), n, p, paths, seed);
                const double slack = 1.0 + 3.0 * dec.lhs_rel_err;
                pass = pass && dec.lhs <= dec.rhs * slack &&
                       dec.lhs <= dec.weighted_rhs * slack;
                if (kind == FamilyKind::rademacher) {
                    pass = pass &&
                           std::abs(dec.s1 - std::sqrt(double(n))) <
                               1e-9 * std::sqrt(double(n)) &&
                           std::abs(dec.s2 - std::pow(double(n), 1.0 / p)) <
                               1e-9 * std::pow(double(n), 1.0 / p);
                }
            }
    return {pass, "8 (family, n, p) cells at " + std::to_string(paths) +
                      " paths, exact rademacher sub-checks"};
}

// 6. centered-Poisson norms track p/(e ln p)
Outcome criterion6() {
    const double p = 512.0;
    const double level = std::log(mu_exact(FamilyKind::centered_poisson, p)) /
                         std::log(p / (std::exp(1.0) * std::log(p)));
    const double drift512 = std::abs(poisson_asymptotic_ratio(512.0) - 1.0);
    const double drift16 = std::abs(poisson_asymptotic_ratio(16.0) - 1.0);
    const bool pass = level >= 0.85 && level <= 1.15 && drift512 < drift16;
    return {pass, "log-level " + fmt(level) + ", |ratio-1| " + fmt(drift512) +
                      " at p=512 vs " + fmt(drift16) + " at p=16"};
}

// 7. tail exponent identities and pipeline recovery
Outcome criterion7() {
    bool pass = true;
    for (int d : {1, 2, 3, 4})
        for (double q : {0.5, 1.0, 2.0})
            for (double r : {-1.0, 0.0, 1.0, 3.0}) {
                const auto [alpha, beta] = theorem41_exponents(d, q, r);
                pass = pass && std::abs(alpha * (d + 1.0 / q) - 1.0) < 1e-12 &&
                       std::abs(beta + (r - d) * alpha) < 1e-12;
            }
    std::string detail = "identities exact;";
    const struct {
        int d;
        double q, r;
    } cases[] = {{1, 2.0, 0.0}, {2, 1.0, 0.0}, {1, 2.0, 1.0}};
    for (const auto& c : cases) {
        const auto [alpha, beta] = theorem41_exponents(c.d, c.q, c.r);
        const MarkovCurve curve = markov_tail_curve(
            product_growth(c.d, c.q, c.r), log_grid(10.0, 1e4, 48));
        const TailBoundShape fit =
            fit_tail_shape(curve.x, curve.t, FitMethod::inverse_slope);
        const double err = std::abs(fit.alpha - alpha) / alpha;
        pass = pass && err < 0.10;
        detail += " err(" + std::to_string(c.d) + "," + fmt(c.q) + "," +
                  fmt(c.r) + ")=" + fmt(err);
    }
    return {pass, detail};
}

// 8. markov tail curves dominate the empirical tails
Outcome criterion8(std::int64_t paths, std::uint64_t seed) {
    bool pass = true;
    std::string detail;
    for (int d : {1, 2}) {
        const FamilySpec spec = make_spec(FamilyKind::rademacher, 30, d);
        const PathBatch batch = generate_batch(spec, paths, seed);
        WeightSpec unit = normalize_to_B(ones_weights(d, 30));
        std::vector<double> samples;
        samples.reserve(static_cast<std::size_t>(paths));
        for (std::int64_t k = 0; k < batch.paths; ++k)
            samples.push_back(
                q_separable_dp(30, d, batch.path(k), unit.betas));
        // rademacher layer moments are 1, so the growth is gamma(d)(p/ln p)^d
        const MomentGrowth growth{gamma_d(d), double(d), -double(d)};
        const std::vector<double> xs = log_grid(3.0, 64.0, 16);
        const TailCurve emp = empirical_tail(samples, xs);
        int active = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double bound = moment_to_tail(growth, xs[i]);
            pass = pass && emp.lo[i] <= bound;
            active += emp.fraction[i] > 0.0 ? 1 : 0;
        }
        detail += "d=" + std::to_string(d) + ": " +
                  std::to_string(active) + "/16 active grid points; ";
    }
    return {pass, detail + std::to_string(paths) + " paths"};
}

// 9. CLI outputs are byte-identical across reruns and thread counts
Outcome criterion9() {
    const std::string cli = POLYMART_CLI_PATH;
    const auto dir = fs::temp_directory_path();
    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    bool pass = true;
    int compared = 0;
    for (const char* mode : {"constants", "bound", "verify", "tail",
                             "decompose", "poisson-demo"}) {
        const fs::path a = dir / (std::string("acc9_") + mode + "_a.csv");
        const fs::path b = dir / (std::string("acc9_") + mode + "_b.csv");
        const fs::path c = dir / (std::string("acc9_") + mode + "_c.csv");
        const auto run = [&](const char* env, const fs::path& out) {
            const std::string cmd = std::string(env) + " " + cli + " " + mode +
                                    " --quick --no-header-timestamp --out " +
                                    out.string() + " 2>/dev/null";
            const int status = std::system(cmd.c_str());
            return WIFEXITED(status) && WEXITSTATUS(status) == 0;
        };
        pass = pass && run("POLYMART_THREADS=1", a);
        pass = pass && run("POLYMART_THREADS=1", b);
        pass = pass && run("POLYMART_THREADS=8", c);
        const std::string ta = slurp(a);
        pass = pass && !ta.empty() && ta == slurp(b) && ta == slurp(c);
        ++compared;
        fs::remove(a);
        fs::remove(b);
        fs::remove(c);
    }
    return {pass, std::to_string(compared) +
                      " subcommands, rerun and 1-vs-8 threads"};
}

}  // namespace

int main(int argc, char** argv) {
    bool full = false;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--full") full = true;
        else if (arg == "--quick") full = false;
        else {
            std::cerr << "usage: acceptance [--quick|--full]\n";
            return 2;
        }
    }
    const std::int64_t paths = full ? 100000 : 10000;
    const std::uint64_t seed = 20260825;

    int failures = 0;
    const auto report = [&](int id, const char* label, const Outcome& o) {
        std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << id
                  << " (" << label << "): " << o.detail << " ["
                  << fmt(now_seconds()) << "s]\n";
        failures += o.pass ? 0 : 1;
    };

    try {
        report(1, "constants", criterion1());
        report(2, "recursion majorants", criterion2());
        report(3, "evaluator equivalence", criterion3());
        report(4, "moment bound suite", criterion4(paths, seed));
        report(5, "decomposition", criterion5(paths, seed));
        report(6, "poisson asymptotics", criterion6());
        report(7, "tail exponents", criterion7());
        report(8, "tail domination", criterion8(paths, seed));
        report(9, "reproducibility", criterion9());
    } catch (const std::exception& e) {
        std::cout << "[FAIL] unhandled error: " << e.what() << "\n";
        return 1;
    }
    std::cout << (failures == 0 ? "all criteria passed"
                                : std::to_string(failures) + " criteria failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
