#pragma once

#include "mabbob/calibration.hpp"
#include "mabbob/ela.hpp"
#include "mabbob/generator.hpp"
#include "mabbob/harness.hpp"
#include "mabbob/metrics.hpp"
#include "mabbob/sampling.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mabbob::io {

/// 17 significant digits ("%.17g"); round-trips every finite double.
std::string format_double(double v);

/// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// Instance specs: a JSON array, one object per line:
// {"dim": int, "weights": [24], "iids": [24], "x_opt": [dim],
//  "scale_factors": [24], "seed": int}
std::string specs_to_json(std::span<const ProblemSpec> specs);
/// Throws ParseError with the line and field of the first problem.
std::vector<ProblemSpec> parse_specs(std::string_view text, const std::string& source = "<specs>");
std::vector<ProblemSpec> read_specs(const std::filesystem::path& path);

// Run logs: problem_id,algorithm,run,eval_index,best_precision. Every run
// lists its improvement events followed by one row at eval_index = budget
// holding the final best precision.
std::string runlogs_to_csv(std::span<const harness::RunLog> logs);
std::vector<harness::RunLog> parse_runlogs(std::string_view text, const std::string& source = "<runlogs>");

std::string auc_table_to_csv(const metrics::AucTable& table);
metrics::AucTable parse_auc_table(std::string_view text, const std::string& source = "<auc>");
std::string ranks_to_csv(std::span<const metrics::RankRow> ranks);
/// algorithm,rank_1,...,rank_k with fractional tie-split counts.
std::string rank_histogram_to_csv(const std::map<std::string, std::vector<double>>& hist);
std::string selector_report_to_csv(std::span<const metrics::SelectorScore> scores);
std::string selector_losses_to_csv(std::span<const metrics::SelectorScore> scores);

/// problem_id,dim,<feature columns>; undefined values are empty fields.
std::string features_to_csv(std::span<const int> problem_ids, int dim, const ela::FeatureTable& table);
struct FeatureCsv {
    std::vector<int> problem_ids;
    std::vector<int> dims;
    ela::FeatureTable table;
};
FeatureCsv parse_features(std::string_view text, const std::string& source = "<features>");

/// fid,dim,n,aggregation,factor
std::string factors_to_csv(std::span<const calibration::FactorRow> rows);

/// index,x1,...,xd
std::string design_to_csv(const Eigen::MatrixXd& points);

} // namespace mabbob::io
