#include "mabbob/calibration.hpp"

#include "mabbob/bbob.hpp"
#include "mabbob/errors.hpp"
#include "mabbob/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mabbob::calibration {

std::string_view to_string(Aggregation agg) noexcept
{
    switch (agg) {
    case Aggregation::min: return "min";
    case Aggregation::mean: return "mean";
    case Aggregation::max: return "max";
    case Aggregation::midrange: return "midrange";
    }
    return "?";
}

Aggregation parse_aggregation(std::string_view name)
{
    for (Aggregation agg : {Aggregation::min, Aggregation::mean, Aggregation::max, Aggregation::midrange}) {
        if (name == to_string(agg)) {
            return agg;
        }
    }
    throw ParameterError("agg", "expected one of min, mean, max, midrange; got '" + std::string(name) + "'");
}

ScaleFactors table_defaults()
{
    return ScaleFactors{{11.0, 17.5, 12.3, 12.6, 11.5, 15.3, 12.1, 15.3, 15.2, 17.4, 13.4, 20.4,
                         12.9, 10.4, 12.3, 10.3, 9.8,  10.6, 10.0, 14.7, 10.7, 10.8, 9.0,  12.1},
                        std::nullopt};
}

double aggregate(std::span<const double> values, Aggregation agg)
{
    if (values.empty()) {
        throw ParameterError("values", "cannot aggregate an empty sample");
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    switch (agg) {
    case Aggregation::min: return *lo;
    case Aggregation::max: return *hi;
    case Aggregation::mean: return stats::mean(values);
    case Aggregation::midrange: return 0.5 * (*hi + *lo);
    }
    return 0.0;
}

double factor_from_precisions(std::span<const double> precisions, Aggregation agg)
{
    std::vector<double> logs(precisions.size());
    std::transform(precisions.begin(), precisions.end(), logs.begin(),
                   [](double p) { return std::log10(std::max(p, 1.0e-8)); });
    return aggregate(logs, agg) + 8.0;
}

double estimate_scale_factor(int fid, int dim, int n, Aggregation agg, Rng& rng)
{
    if (n < 1) {
        throw ParameterError("n", "must be >= 1");
    }
    const bbob::Instance inst = bbob::make_instance(fid, 1, dim);
    std::vector<double> x(static_cast<std::size_t>(dim));
    std::vector<double> precisions(static_cast<std::size_t>(n));
    for (double& p : precisions) {
        for (double& v : x) {
            v = rng.uniform(-5.0, 5.0);
        }
        p = inst(x) - inst.f_opt();
    }
    return factor_from_precisions(precisions, agg);
}

std::vector<FactorRow> estimate_all(std::span<const int> dims, int n, Aggregation agg, std::uint64_t seed)
{
    std::vector<int> sorted(dims.begin(), dims.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<FactorRow> rows;
    for (int fid = 1; fid <= bbob::kNumFunctions; ++fid) {
        for (int dim : sorted) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(fid) * 10007u + static_cast<std::uint64_t>(dim)));
            rows.push_back({fid, dim, n, agg, estimate_scale_factor(fid, dim, n, agg, rng)});
        }
    }
    return rows;
}

std::array<double, 24> median_factors(std::span<const FactorRow> rows)
{
    std::array<double, 24> out{};
    for (int fid = 1; fid <= 24; ++fid) {
        std::vector<double> values;
        for (const FactorRow& r : rows) {
            if (r.fid == fid) {
                values.push_back(r.factor);
            }
        }
        if (!values.empty()) {
            out[static_cast<std::size_t>(fid - 1)] = std::round(10.0 * stats::median(values)) / 10.0;
        }
    }
    return out;
}

} // namespace mabbob::calibration
