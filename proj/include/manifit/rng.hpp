#pragma once

#include <cmath>
#include <cstdint>

#include "manifit/types.hpp"

namespace manifit {

// SplitMix64 finalizer; full-avalanche 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    return mix64(mix64(a) ^ (0xD1B54A32D192ED03ull * b));
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix64(mix64(a, b) ^ (0x8CB92BA72F3D8DD7ull * c));
}

// Counter-based generator. A (seed, stream) pair names an independent
// stream; draws are mix64 of an incrementing counter keyed by the stream.
// Generation is therefore a pure function of (seed, stream, draw index),
// so per-point streams can be evaluated in parallel in any order.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix64(seed, 0x5354524541Dull ^ stream)), ctr_(0) {}

    std::uint64_t next_u64() { return mix64(key_, ++ctr_); }

    // Uniform on (0, 1]: 53-bit mantissa, never exactly zero.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Uniform on [lo, hi).
    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(next_u64() >> 11) * 0x1.0p-53);
    }

    // Standard normal via Box-Muller; the spare value is cached.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * M_PI * u2;
        spare_ = rad * std::sin(ang);
        has_spare_ = true;
        return rad * std::cos(ang);
    }

    // Isotropic unit vector in R^d.
    Vec next_unit_vector(int d) {
        Vec v(d);
        double n2 = 0.0;
        do {
            for (int i = 0; i < d; ++i) v[i] = next_gaussian();
            n2 = v.squaredNorm();
        } while (n2 < 1e-300);
        return v / std::sqrt(n2);
    }

    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t key_;
    std::uint64_t ctr_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace manifit
