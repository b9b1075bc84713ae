#ifndef HYBRIDCSP_RANDOM_HPP
#define HYBRIDCSP_RANDOM_HPP

#include <cstdint>
#include <random>

namespace hybridcsp {

/// Seeded random stream shared by every solver. The draws are defined here
/// rather than through <random> distributions so that a (seed, call sequence)
/// pair yields the same numbers with any standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; one draw consumes two uniforms.
    double normal();

    /// Standard normal resampled until |z| <= limit.
    double truncated_normal(double limit);

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace hybridcsp

#endif  // HYBRIDCSP_RANDOM_HPP
