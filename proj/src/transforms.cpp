#include "mabbob/transforms.hpp"

#include "mabbob/errors.hpp"

#include <cmath>

namespace mabbob::bbob {

double transform_osz(double x) noexcept
{
    if (x == 0.0) {
        return 0.0;
    }
    const double xhat = std::log(std::abs(x));
    const double c1 = x > 0.0 ? 10.0 : 5.5;
    const double c2 = x > 0.0 ? 7.9 : 3.1;
    return std::copysign(std::exp(xhat + 0.049 * (std::sin(c1 * xhat) + std::sin(c2 * xhat))), x);
}

void transform_osz_inplace(std::span<double> x) noexcept
{
    for (double& v : x) {
        v = transform_osz(v);
    }
}

std::vector<double> transform_osz(std::span<const double> x)
{
    std::vector<double> out(x.begin(), x.end());
    transform_osz_inplace(out);
    return out;
}

void transform_asy_inplace(std::span<double> x, double beta) noexcept
{
    const std::size_t n = x.size();
    if (n < 2) {
        // The exponent ramp is undefined for a single coordinate; use the
        // value at the start of the ramp (exponent 1).
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] > 0.0) {
            const double ramp = static_cast<double>(i) / static_cast<double>(n - 1);
            x[i] = std::pow(x[i], 1.0 + beta * ramp * std::sqrt(x[i]));
        }
    }
}

std::vector<double> transform_asy(std::span<const double> x, double beta)
{
    std::vector<double> out(x.begin(), x.end());
    transform_asy_inplace(out, beta);
    return out;
}

std::vector<double> lambda_alpha(double alpha, int dim)
{
    if (dim < 1) {
        throw ParameterError("dim", "must be >= 1");
    }
    std::vector<double> diag(static_cast<std::size_t>(dim), 1.0);
    for (int i = 1; i < dim; ++i) {
        diag[i] = std::pow(alpha, 0.5 * static_cast<double>(i) / static_cast<double>(dim - 1));
    }
    return diag;
}

double f_pen(std::span<const double> x) noexcept
{
    double sum = 0.0;
    for (double v : x) {
        const double excess = std::abs(v) - 5.0;
        if (excess > 0.0) {
            sum += excess * excess;
        }
    }
    return sum;
}

} // namespace mabbob::bbob
