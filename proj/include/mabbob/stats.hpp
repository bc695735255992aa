#pragma once

#include <span>
#include <vector>

namespace mabbob::stats {

double mean(std::span<const double> v);

/// Fractional ranks (1-based); tied values share the mean of the ranks they
/// cover. With `descending`, the largest value gets rank 1.
std::vector<double> average_ranks(std::span<const double> v, bool descending = false);

/// Pearson correlation; 0 if either input is constant.
double pearson(std::span<const double> a, std::span<const double> b);

/// Spearman rank correlation (Pearson on average ranks).
double spearman(std::span<const double> a, std::span<const double> b);

double median(std::vector<double> v);

} // namespace mabbob::stats
