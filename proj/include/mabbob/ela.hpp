#pragma once

#include "mabbob/generator.hpp"
#include "mabbob/sampling.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mabbob::ela {

inline constexpr std::array<std::string_view, 11> kFeatureNames{
    "ela_meta.lin_r2",       "ela_meta.lin_intercept_abs", "ela_meta.quad_r2", "ela_meta.quad_cond",
    "ela_distr.skewness",    "ela_distr.kurtosis",         "nbc.nb_mean_ratio", "nbc.nb_cor",
    "disp.ratio_mean_05",    "ic.h_max",                   "ic.eps_s",
};
inline constexpr std::size_t kNumFeatures = kFeatureNames.size();

/// Feature values in kFeatureNames order; empty entries are undefined.
struct FeatureVector {
    std::array<std::optional<double>, kNumFeatures> values{};
    bool constant_input = false;

    std::optional<double> operator[](std::string_view name) const;
};

struct Normalized {
    std::vector<double> values;
    bool constant = false; // all inputs equal; values are all 0
};

/// (y - min) / (max - min).
Normalized minmax_normalize(std::span<const double> y);

/// Features of the sample (x, y); rows of `x` are points. `y` is min-max
/// normalized first, so the result is invariant under y -> a*y + b, a > 0.
FeatureVector compute_features(const Eigen::MatrixXd& x, std::span<const double> y);

/// Evaluates `problem` on `design` mapped to [-5, 5]^dim, then as above.
FeatureVector compute_features(const MAProblem& problem, const sampling::SampleDesign& design);

struct FeatureConfig {
    int n_designs = 5;
    int points_per_dim = 1000; // points per design = points_per_dim * dim
    std::uint64_t seed = 1;
};

/// Design k of a feature run: scrambled Sobol' with seed derive_seed(seed, k).
sampling::SampleDesign feature_design(const FeatureConfig& cfg, int dim, int k);

struct FeatureTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows; // one per problem, same order as input
};

/// Per-problem mean of each feature over cfg.n_designs designs. A feature
/// that is undefined on any design is undefined for that problem. With
/// `drop_undefined`, columns undefined for any problem are removed.
FeatureTable feature_table(std::span<const MAProblem> problems, const FeatureConfig& cfg, bool drop_undefined = true);

} // namespace mabbob::ela
