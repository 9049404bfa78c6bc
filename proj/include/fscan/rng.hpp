#pragma once

#include <cmath>
#include <cstdint>

#include "fscan/geometry.hpp"

namespace fscan {

/// Small deterministic generator (splitmix64 core) so that scans rendered
/// from a seed are bit-identical across runs and toolchains — the standard
/// <random> distributions make no such promise.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; second value cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]: keeps log finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Derive an independent stream for a named draw.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t draw) {
        Rng r(seed ^ (0xD1B54A32D192ED03ull * (draw + 1)));
        return r.next_u64();
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace fscan
