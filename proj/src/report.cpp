#include "polymart/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace polymart {

std::string format_double(double v) {
    if (!std::isfinite(v)) return "";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header,
                     bool timestamp_header)
    : os_(&os), ncols_(header.size()) {
    if (timestamp_header) {
        const std::time_t now =
            std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char stamp[32];
        std::tm tm{};
        gmtime_r(&now, &tm);
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm);
        *os_ << "# generated " << stamp << '\n';
    }
    for (std::size_t i = 0; i < header.size(); ++i)
        *os_ << (i ? "," : "") << header[i];
    *os_ << '\n';
}

CsvWriter& CsvWriter::cell(double v) { return cell(std::string_view(format_double(v))); }

CsvWriter& CsvWriter::cell(std::int64_t v) {
    return cell(std::string_view(std::to_string(v)));
}

CsvWriter& CsvWriter::cell(std::string_view s) {
    if (col_ >= ncols_) throw std::logic_error("row has more cells than the header");
    *os_ << (col_++ ? "," : "") << s;
    return *this;
}

void CsvWriter::endrow() {
    if (col_ != ncols_) throw std::logic_error("row has fewer cells than the header");
    *os_ << '\n';
    col_ = 0;
}

Table parse_csv(std::istream& is) {
    Table t;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> cells;
        std::size_t pos = 0;
        for (;;) {
            const std::size_t comma = line.find(',', pos);
            cells.push_back(line.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (!have_header) {
            t.header = std::move(cells);
            have_header = true;
        } else {
            t.rows.push_back(std::move(cells));
        }
    }
    return t;
}

namespace {

const std::vector<std::string_view> known_modes = {
    "verify", "bound", "tail", "decompose", "poisson-demo", "constants"};

bool stochastic_mode(std::string_view mode) {
    return mode == "verify" || mode == "decompose";
}

FamilySpec parse_family(const nlohmann::json& j) {
    FamilySpec spec;
    if (!j.contains("kind")) throw ConfigError("family entry is missing \"kind\"");
    spec.kind = family_from_string(j.at("kind").get<std::string>());
    if (j.contains("base"))
        spec.base = family_from_string(j.at("base").get<std::string>());
    if (j.contains("sigma2")) {
        const auto& s = j.at("sigma2");
        if (s.is_number()) {
            spec.sigma2 = {s.get<double>()};
        } else if (s.is_array() && !s.empty() && s.front().is_array()) {
            for (const auto& row : s)
                for (const auto& v : row) spec.sigma2.push_back(v.get<double>());
        } else {
            spec.sigma2 = s.get<std::vector<double>>();
        }
    }
    return spec;
}

}  // namespace

void ExperimentConfig::validate() const {
    bool known = false;
    for (auto m : known_modes) known = known || mode == m;
    if (!known) throw ConfigError("unknown mode: " + mode);
    if (stochastic_mode(mode)) {
        if (!has_seed)
            throw ConfigError("mode " + mode +
                              " needs an explicit seed (config or --seed)");
        if (families.empty()) throw ConfigError("no families configured");
        if (n_list.empty() || p_list.empty())
            throw ConfigError("empty n or p grid");
        if (mode == "verify" && d_list.empty()) throw ConfigError("empty d grid");
        if (directions < 1) throw ConfigError("need at least one direction");
    }
    if (mode == "bound" && (families.empty() || d_list.empty() || p_list.empty()))
        throw ConfigError("bound mode needs families and d/p grids");
    if (mode == "poisson-demo" && p_list.empty())
        throw ConfigError("poisson-demo needs a p grid");
    if (mode == "tail") {
        if (tail_d < 1 || !(tail_q > 0.0))
            throw ConfigError("tail mode needs d >= 1 and q > 0");
        if (x_points < 8 || !(x_lo > std::exp(1.0)) || !(x_hi > x_lo))
            throw ConfigError("tail mode needs e < x_lo < x_hi and >= 8 points");
    }
    if (paths < 0) throw ConfigError("paths must be >= 0");
    for (const FamilySpec& f : families) {
        FamilySpec probe = f;
        probe.n = n_list.empty() ? 1 : n_list.front();
        probe.d = d_list.empty() ? 1 : d_list.front();
        if (!probe.sigma2.empty() && probe.sigma2.size() != 1)
            continue;  // per-layer/per-entry maps are checked at run time
        probe.validate();
    }
}

ExperimentConfig default_config(std::string_view mode) {
    ExperimentConfig cfg;
    cfg.mode = std::string(mode);
    cfg.seed = 20260825;
    cfg.has_seed = true;
    const auto fam = [](FamilyKind k) {
        FamilySpec f;
        f.kind = k;
        return f;
    };
    if (mode == "verify" || mode == "bound") {
        cfg.families = {fam(FamilyKind::rademacher), fam(FamilyKind::gaussian),
                        fam(FamilyKind::centered_poisson),
                        fam(FamilyKind::martingale_scaled)};
        cfg.d_list = {1, 2, 3};
        cfg.n_list = {10, 30};
        cfg.p_list = {4, 8, 12};
        cfg.directions = 20;
    } else if (mode == "decompose") {
        cfg.families = {fam(FamilyKind::rademacher),
                        fam(FamilyKind::martingale_scaled)};
        cfg.n_list = {16, 64};
        cfg.p_list = {4, 8};
        cfg.d_list = {1};
        cfg.directions = 1;
    } else if (mode == "poisson-demo") {
        cfg.p_list = {8, 16, 32, 64, 128, 256, 512};
    } else if (mode == "tail") {
        cfg.tail_d = 1;
        cfg.tail_q = 2.0;
        cfg.tail_r = 0.0;
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    try {
        if (!j.contains("mode"))
            throw ConfigError("config is missing the \"mode\" field");
        ExperimentConfig cfg = default_config(j.at("mode").get<std::string>());
        cfg.has_seed = false;  // defaults never supply a seed for user configs
        if (j.contains("families")) {
            cfg.families.clear();
            for (const auto& f : j.at("families")) cfg.families.push_back(parse_family(f));
        }
        if (j.contains("d")) cfg.d_list = j.at("d").get<std::vector<int>>();
        if (j.contains("n")) cfg.n_list = j.at("n").get<std::vector<int>>();
        if (j.contains("p")) cfg.p_list = j.at("p").get<std::vector<double>>();
        if (j.contains("directions")) cfg.directions = j.at("directions").get<int>();
        if (j.contains("paths")) cfg.paths = j.at("paths").get<std::int64_t>();
        if (j.contains("seed")) {
            cfg.seed = j.at("seed").get<std::uint64_t>();
            cfg.has_seed = true;
        }
        if (j.contains("ratio_max")) cfg.ratio_max = j.at("ratio_max").get<double>();
        if (j.contains("tail")) {
            const auto& t = j.at("tail");
            if (t.contains("d")) cfg.tail_d = t.at("d").get<int>();
            if (t.contains("q")) cfg.tail_q = t.at("q").get<double>();
            if (t.contains("r")) cfg.tail_r = t.at("r").get<double>();
            if (t.contains("c")) cfg.growth_c = t.at("c").get<double>();
        }
        if (j.contains("x")) {
            const auto& x = j.at("x");
            if (x.contains("lo")) cfg.x_lo = x.at("lo").get<double>();
            if (x.contains("hi")) cfg.x_hi = x.at("hi").get<double>();
            if (x.contains("points")) cfg.x_points = x.at("points").get<int>();
        }
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
}

}  // namespace polymart
