#pragma once

#include <span>
#include <vector>

// Helper transformations shared by the BBOB function definitions.
namespace mabbob::bbob {

/// Oscillation transform, scalar form.
double transform_osz(double x) noexcept;
/// Oscillation transform applied coordinate-wise.
std::vector<double> transform_osz(std::span<const double> x);
void transform_osz_inplace(std::span<double> x) noexcept;

/// Asymmetric transform: x_i -> x_i^(1 + beta * (i-1)/(D-1) * sqrt(x_i)) for
/// x_i > 0. Nonpositive coordinates pass through unchanged.
std::vector<double> transform_asy(std::span<const double> x, double beta);
void transform_asy_inplace(std::span<double> x, double beta) noexcept;

/// Diagonal of the conditioning matrix: entry i is alpha^(0.5 * i / (D-1))
/// (0-based i), spanning [1, sqrt(alpha)] geometrically. For dim == 1 the
/// single entry is 1.
std::vector<double> lambda_alpha(double alpha, int dim);

/// Boundary penalty: sum of max(0, |x_i| - 5)^2.
double f_pen(std::span<const double> x) noexcept;

} // namespace mabbob::bbob
