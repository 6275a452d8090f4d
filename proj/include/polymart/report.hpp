#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polymart/families.hpp"

namespace polymart {

// Shortest round-trip decimal form; NaN/Inf serialize as the empty cell.
std::string format_double(double v);

// Minimal CSV emitter: fixed column count per row, '\n' line ends, one
// optional '# generated <utc>' comment line (suppressible for
// byte-identical reruns).
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& header,
              bool timestamp_header);

    CsvWriter& cell(double v);
    CsvWriter& cell(std::int64_t v);
    CsvWriter& cell(int v) { return cell(static_cast<std::int64_t>(v)); }
    CsvWriter& cell(std::string_view s);
    void endrow();

private:
    std::ostream* os_;
    std::size_t ncols_;
    std::size_t col_ = 0;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Parses CsvWriter output ('#'-prefixed lines skipped). Cells are kept
// verbatim, so emit/parse round-trips exactly.
Table parse_csv(std::istream& is);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One experiment description; modes: verify, bound, tail, decompose,
// poisson-demo, constants.
struct ExperimentConfig {
    std::string mode;
    std::vector<FamilySpec> families;  // kind/base/sigma2 filled; n,d from grids
    std::vector<int> d_list;
    std::vector<int> n_list;
    std::vector<double> p_list;
    int directions = 20;
    std::int64_t paths = 0;  // 0 = profile default (quick 1e4, full 1e5)
    std::uint64_t seed = 0;
    bool has_seed = false;
    double ratio_max = 0.2;
    // tail mode
    int tail_d = 1;
    double tail_q = 2.0;
    double tail_r = 0.0;
    double growth_c = 1.0;
    double x_lo = 10.0;
    double x_hi = 1e4;
    int x_points = 48;

    void validate() const;  // throws ConfigError
};

// Built-in defaults per mode (all carry fixed seeds; never wall clock).
ExperimentConfig default_config(std::string_view mode);

// Loads and validates a JSON config file; throws ConfigError with a
// position-annotated message on malformed input.
ExperimentConfig load_config(const std::string& path);

}  // namespace polymart
