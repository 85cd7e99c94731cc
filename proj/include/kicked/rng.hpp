#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace kicked::rng {

// Deterministic random streams. std::mt19937_64 output is fully specified by
// the standard, but the distribution adaptors are not, so the uniform and
// normal variates are generated explicitly to keep results reproducible
// across toolchains.

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

// Uniform double in [0, 1) with 53 random mantissa bits.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Standard normal variates via Box-Muller.
class GaussianStream {
  public:
    GaussianStream(std::uint64_t seed, std::uint64_t stream = 0)
        : eng_(make_engine(seed, stream)) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01(eng_);  // (0, 1]
        const double u2 = uniform01(eng_);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace kicked::rng
