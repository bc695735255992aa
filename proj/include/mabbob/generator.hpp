#pragma once

#include "mabbob/bbob.hpp"
#include "mabbob/rng.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mabbob {

inline constexpr int kComponents = bbob::kNumFunctions;
/// Value of every generated problem at its optimum: 10^-8.
inline constexpr double kOptimumValue = 1.0e-8;
/// Precision floor applied to each component before the logarithm.
inline constexpr double kPrecisionFloor = 1.0e-8;

/// Convex combination coefficients over the 24 components.
class WeightVector {
public:
    /// Throws ParameterError unless all entries are >= 0, they sum to 1
    /// (within 1e-12), and at least two are positive or one equals 1.
    explicit WeightVector(const std::array<double, kComponents>& w);

    const std::array<double, kComponents>& values() const noexcept { return w_; }
    /// 1-based function id.
    double operator[](int fid) const { return w_.at(static_cast<std::size_t>(fid - 1)); }
    int nonzero_count() const noexcept;
    bool is_one_hot() const noexcept { return nonzero_count() == 1; }

    friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
    std::array<double, kComponents> w_;
};

struct GeneratorConfig {
    double threshold = 0.85;
    int dim = 5;
    std::uint64_t seed = 1;
    int count = 1;
};

/// Thresholding applied to raw draws `u`: t = min(T, third-highest u),
/// w = max(0, u - t), normalized. Empty when fewer than two entries survive.
std::optional<WeightVector> threshold_weights(std::span<const double, kComponents> u, double threshold);

/// Draws 24 uniforms and applies threshold_weights(), redrawing in the
/// (probability-zero) degenerate case.
WeightVector sample_weights(Rng& rng, double threshold);

/// w_fid = 1, all others 0.
WeightVector one_hot(int fid);

/// Everything that defines a generated problem; the serialized form.
struct ProblemSpec {
    int dim = 0;
    std::array<double, kComponents> weights{};
    std::array<int, kComponents> iids{};
    std::vector<double> x_opt;
    std::array<double, kComponents> scale_factors{};
    std::uint64_t seed = 0;

    friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// Scaled log-space affine combination of the 24 BBOB components with a
/// relocated optimum. Immutable; evaluation is thread-safe.
class MAProblem {
public:
    int dim() const noexcept { return dim_; }
    const WeightVector& weights() const noexcept { return weights_; }
    const std::array<int, kComponents>& iids() const noexcept { return iids_; }
    const std::vector<double>& x_opt() const noexcept { return x_opt_; }
    const std::array<double, kComponents>& scale_factors() const noexcept { return scale_; }
    const bbob::Instance& component(int fid) const { return components_.at(static_cast<std::size_t>(fid - 1)); }
    std::uint64_t seed() const noexcept { return seed_; }

    /// Objective value, in [1e-8, inf). Equals 1e-8 at x_opt().
    double operator()(std::span<const double> x) const;

    /// Weighted sum L of the scaled log-precisions; the objective is
    /// 10^(10 L - 8).
    double log_combination(std::span<const double> x) const;

    /// Unclamped precision of component `fid` at x, i.e.
    /// f((x - x_opt) + x_opt_fid) - f_opt_fid.
    double component_precision(int fid, std::span<const double> x) const;

    ProblemSpec spec() const;

private:
    friend MAProblem make_problem(const WeightVector&, const std::array<int, kComponents>&, std::vector<double>, int,
                                  const std::array<double, kComponents>&);
    friend MAProblem make_problem(const ProblemSpec&);

    MAProblem(const WeightVector& w) : weights_(w) {}

    void check_dim(std::span<const double> x) const;
    double component_precision_unchecked(int index, const double* x, double* shifted) const;

    int dim_ = 0;
    WeightVector weights_;
    std::array<int, kComponents> iids_{};
    std::vector<double> x_opt_;
    std::array<double, kComponents> scale_{};
    std::vector<bbob::Instance> components_;
    std::vector<int> active_; // 0-based indices with positive weight
    std::uint64_t seed_ = 0;
};

/// Throws ParameterError for iids outside 1..100, x_opt outside [-5, 5],
/// length mismatches or nonpositive scale factors.
MAProblem make_problem(const WeightVector& weights, const std::array<int, kComponents>& iids,
                       std::vector<double> x_opt_new, int dim, const std::array<double, kComponents>& scale);

/// Builds the problem from its serialized form; `spec.seed` is carried along.
MAProblem make_problem(const ProblemSpec& spec);

double evaluate(const MAProblem& problem, std::span<const double> x);

/// Random weights (sample_weights), iids uniform in 1..100, optimum uniform
/// in [-5, 5]^dim, table scale factors. Draw order is weights, iids, optimum,
/// so the same stream gives nested optima across dimensions.
ProblemSpec random_spec(Rng& rng, const GeneratorConfig& cfg);
MAProblem random_problem(Rng& rng, const GeneratorConfig& cfg);

/// Pure BBOB problem: one-hot weights, every iid = `iid`, optimum at the
/// component's own optimum, table scale factors.
ProblemSpec pure_bbob_spec(int fid, int iid, int dim);

/// Same problem in a lower dimension: the optimum keeps its leading
/// coordinates.
ProblemSpec restrict_dimension(const ProblemSpec& spec, int dim);

} // namespace mabbob
