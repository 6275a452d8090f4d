#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace polymart::rng {

// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t chain(std::uint64_t h, std::uint64_t v) noexcept {
    return mix(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

// Stream tags keep draws for unrelated purposes in disjoint key spaces.
inline constexpr std::uint64_t tag_path      = 0x5041544853ULL;
inline constexpr std::uint64_t tag_direction = 0x4449524543ULL;
inline constexpr std::uint64_t tag_scan      = 0x5343414e53ULL;

// Counter-based uniform/gaussian/poisson source. A stream is a pure
// function of the key material fed to it, so draws are independent of
// scheduling and thread count.
class Stream {
public:
    Stream() = default;
    template <class... Keys>
    explicit Stream(Keys... keys) {
        (feed(static_cast<std::uint64_t>(keys)), ...);
    }

    void feed(std::uint64_t v) noexcept { key_ = chain(key_, v); }

    std::uint64_t next_u64() noexcept { return mix(key_ ^ mix(++ctr_)); }

    // Uniform on the open interval (0,1); never returns 0 or 1.
    double u01() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    double gaussian() noexcept {
        const double u1 = u01();
        const double u2 = u01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    // Knuth's product method, lambda = 1.
    int poisson1() noexcept {
        static const double L = std::exp(-1.0);
        double prod = u01();
        int k = 0;
        while (prod > L) {
            ++k;
            prod *= u01();
        }
        return k;
    }

private:
    std::uint64_t key_ = 0xcbf29ce484222325ULL;
    std::uint64_t ctr_ = 0;
};

}  // namespace polymart::rng
