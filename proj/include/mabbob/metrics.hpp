#pragma once

#include "mabbob/harness.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace mabbob::metrics {

inline constexpr int kNumTargets = 51;

/// Precision targets 10^2, 10^1.8, ..., 10^-8.
struct TargetSet {
    std::array<double, kNumTargets> values{};
};

TargetSet targets();

/// Normalized area under the fixed-target ECDF over a linear evaluation
/// axis: mean over runs and targets of (B - first_hit + 1) / B, with 0 for
/// targets never reached. All logs must share one budget B.
double auc(std::span<const harness::RunLog> logs, const TargetSet& t);

struct AucRow {
    int problem_id = 0;
    std::string algorithm;
    double auc = 0.0;

    friend bool operator==(const AucRow&, const AucRow&) = default;
};
using AucTable = std::vector<AucRow>;

/// One row per (problem, algorithm) group of `logs`, sorted by problem id;
/// algorithms keep their order of first appearance.
AucTable auc_table(std::span<const harness::RunLog> logs, const TargetSet& t);

struct RankRow {
    int problem_id = 0;
    std::string algorithm;
    double rank = 0.0;
};

/// Per-problem ranks, 1 = highest AUC; ties share the mean of the ranks they
/// cover. Throws ParameterError naming (problem, algorithm) for a missing
/// cell.
std::vector<RankRow> rank_algorithms(const AucTable& table);

/// counts[algorithm][k] = number of problems where the algorithm holds rank
/// k + 1. A tie over ranks r..s adds 1 / (s - r + 1) to each position, so
/// every position sums to the number of problems.
std::map<std::string, std::vector<double>> rank_histogram(std::span<const RankRow> ranks);

/// Algorithm with the highest AUC per problem; ties go to the one listed
/// first in the table.
std::map<int, std::string> best_algorithm(const AucTable& table);

struct LabeledPoint {
    int problem_id = 0;
    std::vector<double> features;
    std::string label;
};

/// 1-nearest-neighbour (Euclidean) label; ties go to the lower problem id.
std::string knn_select(std::span<const LabeledPoint> train, std::span<const double> query);

/// Per-class F1 averaged with class-support weights (support from `truth`).
double weighted_f1(std::span<const std::string> pred, std::span<const std::string> truth);

/// loss_p = max_a AUC(p, a) - AUC(p, selected_p), in the order of `selected`.
std::vector<double> auc_loss(std::span<const std::pair<int, std::string>> selected, const AucTable& table);

struct SelectorScore {
    std::string representation;
    double weighted_f1 = 0.0;
    double mean_loss = 0.0;
    std::vector<std::pair<int, std::string>> selected; // (problem, algorithm)
    std::vector<double> losses;
};

/// k-fold cross-validated 1-NN selection for every representation (name ->
/// per-problem vector). Features are z-scored with training-fold statistics.
/// Folds come from a seeded shuffle of the problem ids present in `table`.
/// An "oracle" row (per-problem best) is appended.
std::vector<SelectorScore> selector_baseline(const AucTable& table,
                                             const std::map<std::string, std::map<int, std::vector<double>>>& reps,
                                             int folds, std::uint64_t seed);

} // namespace mabbob::metrics
