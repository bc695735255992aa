#pragma once

#include "mabbob/rng.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mabbob::calibration {

enum class Aggregation { min, mean, max, midrange };

std::string_view to_string(Aggregation agg) noexcept;
/// Parses "min", "mean", "max" or "midrange". Throws ParameterError.
Aggregation parse_aggregation(std::string_view name);

struct ScaleFactors {
    struct Estimate {
        int dim = 0;
        int n_samples = 0;
        Aggregation aggregation = Aggregation::midrange;
        std::uint64_t seed = 0;
    };

    std::array<double, 24> values{};
    std::optional<Estimate> estimated; // empty for the hard-coded table

    bool hardcoded() const noexcept { return !estimated.has_value(); }
    double operator[](int fid) const { return values.at(static_cast<std::size_t>(fid - 1)); }
};

/// The fixed per-function factors used by the generator.
ScaleFactors table_defaults();

/// Aggregates a non-empty sample. midrange = (max + min) / 2.
double aggregate(std::span<const double> values, Aggregation agg);

/// Factor from raw precisions: aggregate of log10(max(p, 1e-8)), plus 8.
/// A sample that sits at the optimum everywhere gives 0.
double factor_from_precisions(std::span<const double> precisions, Aggregation agg);

/// Samples `n` uniform points of [-5, 5]^dim on instance 1 of `fid` and
/// returns factor_from_precisions() of their precisions.
double estimate_scale_factor(int fid, int dim, int n, Aggregation agg, Rng& rng);

struct FactorRow {
    int fid = 0;
    int dim = 0;
    int n = 0;
    Aggregation aggregation = Aggregation::midrange;
    double factor = 0.0;
};

/// estimate_scale_factor() for every (fid, dim). Each pair draws from its own
/// stream derive_seed(seed, fid * 10007 + dim); rows come back sorted by
/// (fid, dim).
std::vector<FactorRow> estimate_all(std::span<const int> dims, int n, Aggregation agg, std::uint64_t seed);

/// Per-fid median across the dimensions present in `rows`, rounded to one
/// decimal. Functions without rows get 0.
std::array<double, 24> median_factors(std::span<const FactorRow> rows);

} // namespace mabbob::calibration
