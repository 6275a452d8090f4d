#include "polymart/paths.hpp"

#include <cmath>
#include <stdexcept>

#include "polymart/parallel.hpp"
#include "polymart/rng.hpp"

namespace polymart {

namespace {

double draw_base(FamilyKind kind, rng::Stream& s) {
    switch (kind) {
        case FamilyKind::rademacher:
            return s.u01() < 0.5 ? -1.0 : 1.0;
        case FamilyKind::gaussian:
            return s.gaussian();
        case FamilyKind::centered_poisson:
            return static_cast<double>(s.poisson1()) - 1.0;
        case FamilyKind::uniform_centered:
            return (2.0 * s.u01() - 1.0) * std::sqrt(3.0);
        case FamilyKind::martingale_scaled:
            break;
    }
    throw std::invalid_argument("not a base noise kind");
}

// Writes one path into row-major storage. The scaled kind multiplies the
// base noise by h_i = 1 if the sum of all previous rows is >= 0 else 1/2;
// h_i depends only on rows < i, so conditional centering is preserved.
void fill_path(const FamilySpec& spec, std::uint64_t path_id,
               std::uint64_t seed, double* entries, double* h) {
    const bool scaled = spec.kind == FamilyKind::martingale_scaled;
    const FamilyKind base = scaled ? spec.base : spec.kind;
    double past_sum = 0.0;
    for (int i = 0; i < spec.n; ++i) {
        const double hi = scaled ? (past_sum >= 0.0 ? 1.0 : 0.5) : 1.0;
        h[i] = hi;
        double row_sum = 0.0;
        for (int m = 0; m < spec.d; ++m) {
            rng::Stream s(seed, rng::tag_path, path_id,
                          static_cast<std::uint64_t>(i),
                          static_cast<std::uint64_t>(m));
            const double e = spec.sigma_at(i, m) * hi * draw_base(base, s);
            entries[static_cast<std::size_t>(i) * spec.d + m] = e;
            row_sum += e;
        }
        past_sum += row_sum;
    }
}

}  // namespace

SamplePath generate(const FamilySpec& spec, std::uint64_t path_id,
                    std::uint64_t seed) {
    spec.validate();
    SamplePath path;
    path.n = spec.n;
    path.d = spec.d;
    path.entries.resize(static_cast<std::size_t>(spec.n) * spec.d);
    path.h.resize(static_cast<std::size_t>(spec.n));
    fill_path(spec, path_id, seed, path.entries.data(), path.h.data());
    return path;
}

PathBatch generate_batch(const FamilySpec& spec, std::int64_t paths,
                         std::uint64_t seed) {
    spec.validate();
    if (paths < 1) throw std::invalid_argument("need at least one path");
    PathBatch batch;
    batch.n = spec.n;
    batch.d = spec.d;
    batch.paths = paths;
    batch.entries.resize(static_cast<std::size_t>(paths) * spec.n * spec.d);
    batch.h.resize(static_cast<std::size_t>(paths) * spec.n);
    parallel_for(paths, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t k = lo; k < hi; ++k)
            fill_path(spec, static_cast<std::uint64_t>(k), seed,
                      batch.entries.data() +
                          static_cast<std::size_t>(k) * spec.n * spec.d,
                      batch.h.data() + static_cast<std::size_t>(k) * spec.n);
    });
    return batch;
}

}  // namespace polymart
