#pragma once

#include <cstdint>
#include <vector>

#include "polymart/families.hpp"

namespace polymart {

// One realized n x d matrix of martingale differences, rows in time order.
// h holds the past-measurable scaling factor per row (1 for independent
// kinds); kept so conditional variances h^2 sigma^2 are reconstructible.
struct SamplePath {
    int n = 0;
    int d = 0;
    std::vector<double> entries;  // row-major: entries[i*d + m]
    std::vector<double> h;        // size n

    double at(int i, int m) const {
        return entries[static_cast<std::size_t>(i) * d + m];
    }
};

// Deterministic function of (spec, path_id, seed); every entry draws from
// a counter stream keyed by (seed, path_id, i, m), so paths are identical
// regardless of scheduling or thread count.
SamplePath generate(const FamilySpec& spec, std::uint64_t path_id,
                    std::uint64_t seed);

// Flat batch of paths (path-major layout) generated in parallel.
struct PathBatch {
    int n = 0;
    int d = 0;
    std::int64_t paths = 0;
    std::vector<double> entries;  // entries[(k*n + i)*d + m]
    std::vector<double> h;        // h[k*n + i]

    const double* path(std::int64_t k) const {
        return entries.data() + static_cast<std::size_t>(k) * n * d;
    }
    const double* path_h(std::int64_t k) const {
        return h.data() + static_cast<std::size_t>(k) * n;
    }
};

PathBatch generate_batch(const FamilySpec& spec, std::int64_t paths,
                         std::uint64_t seed);

}  // namespace polymart
