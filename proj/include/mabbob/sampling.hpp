#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string_view>

namespace mabbob::sampling {

enum class DesignKind { scrambled_sobol, sobol, uniform };

std::string_view to_string(DesignKind kind) noexcept;

/// Highest dimension covered by the built-in direction numbers.
inline constexpr int kMaxSobolDim = 21;

/// n x dim point set in [0, 1).
struct SampleDesign {
    DesignKind kind = DesignKind::sobol;
    int dim = 0;
    int n = 0;
    std::uint64_t seed = 0;
    Eigen::MatrixXd points; // row i is point i
};

/// First n points of the Sobol' sequence, including the initial all-zeros
/// point. With `scramble`, every coordinate gets a seeded random digital
/// (XOR) shift, which keeps the net structure.
/// Throws CapabilityError for dim > kMaxSobolDim.
SampleDesign sobol(int dim, int n, std::uint64_t seed, bool scramble);

/// Independent uniform points.
SampleDesign uniform(int dim, int n, std::uint64_t seed);

/// Affine map of every coordinate from [0, 1) to [lo, hi).
Eigen::MatrixXd scale_to_box(const SampleDesign& design, double lo, double hi);
/// Inverse of scale_to_box().
Eigen::MatrixXd unscale_from_box(const Eigen::MatrixXd& points, double lo, double hi);

/// Counts, for the elementary intervals of volume 2^-m given by exponent
/// split (d_1, ..., d_s) with sum m, how many intervals do not hold exactly
/// `n / 2^m` points. Zero means the design is stratified for that split.
int stratification_violations(const Eigen::MatrixXd& points, std::span<const int> exponents);

} // namespace mabbob::sampling
