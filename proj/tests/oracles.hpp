// Reference formulas written directly from the function definitions,
// independent of the library implementation.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

inline double osz(double x)
{
    if (x == 0.0) {
        return 0.0;
    }
    const double h = std::log(std::abs(x));
    const double c1 = x > 0 ? 10.0 : 5.5;
    const double c2 = x > 0 ? 7.9 : 3.1;
    return (x > 0 ? 1.0 : -1.0) * std::exp(h + 0.049 * (std::sin(c1 * h) + std::sin(c2 * h)));
}

inline std::vector<double> asy(std::vector<double> x, double beta)
{
    const double d = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0) {
            x[i] = std::pow(x[i], 1.0 + beta * static_cast<double>(i) / (d - 1.0) * std::sqrt(x[i]));
        }
    }
    return x;
}

// Exact binomial expectation of max(2, Bin(n, p)).
inline double expected_count(int n, double p)
{
    double e = 0.0;
    double pk = std::pow(1.0 - p, n); // P(K = 0)
    for (int k = 0; k <= n; ++k) {
        e += pk * (k < 2 ? 2.0 : static_cast<double>(k));
        pk *= static_cast<double>(n - k) / static_cast<double>(k + 1) * p / (1.0 - p);
    }
    return e;
}

} // namespace oracle
