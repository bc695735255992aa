#pragma once

#include <cstdint>
#include <random>

namespace mabbob {

/// Mixes a 64-bit value (splitmix64 finalizer). Stable across platforms.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives a child seed from a parent seed and a counter.
///
/// Seeds are split hierarchically: master -> per-instance -> per-run. Every
/// level is `derive_seed(parent, index)`, so any subset of the work can be
/// reproduced without replaying the rest.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept;

/// Portable random source. The standard distributions are
/// implementation-defined, so the conversions are done here by hand; the
/// same seed yields the same stream with any standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi], unbiased.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    /// Standard normal (Marsaglia polar method).
    double normal();

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace mabbob
