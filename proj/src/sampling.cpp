#include "mabbob/sampling.hpp"

#include "mabbob/errors.hpp"
#include "mabbob/rng.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace mabbob::sampling {

namespace {

constexpr int kBits = 32;

struct DirectionEntry {
    int degree;
    std::uint32_t coeffs; // interior coefficients of the primitive polynomial
    std::array<std::uint32_t, 8> m;
};

// Joe & Kuo (new-joe-kuo-6.21201) direction numbers for dimensions 2..21.
// Dimension 1 is the van der Corput sequence.
constexpr std::array<DirectionEntry, kMaxSobolDim - 1> kDirections{{
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
    {6, 19, {1, 1, 1, 15, 7, 5}},
    {6, 22, {1, 3, 1, 15, 13, 25}},
    {6, 25, {1, 1, 5, 5, 19, 61}},
    {7, 1, {1, 3, 7, 11, 23, 15, 103}},
    {7, 4, {1, 3, 7, 13, 13, 15, 69}},
}};

std::array<std::uint32_t, kBits> direction_vectors(int d)
{
    std::array<std::uint32_t, kBits> v{};
    if (d == 0) {
        for (int k = 0; k < kBits; ++k) {
            v[k] = 1u << (kBits - 1 - k);
        }
        return v;
    }
    const DirectionEntry& e = kDirections[static_cast<std::size_t>(d - 1)];
    const int s = e.degree;
    for (int k = 0; k < s && k < kBits; ++k) {
        v[k] = e.m[k] << (kBits - 1 - k);
    }
    for (int k = s; k < kBits; ++k) {
        std::uint32_t value = v[k - s] ^ (v[k - s] >> s);
        for (int j = 1; j < s; ++j) {
            if ((e.coeffs >> (s - 1 - j)) & 1u) {
                value ^= v[k - j];
            }
        }
        v[k] = value;
    }
    return v;
}

} // namespace

std::string_view to_string(DesignKind kind) noexcept
{
    switch (kind) {
    case DesignKind::scrambled_sobol: return "scrambled-sobol";
    case DesignKind::sobol: return "sobol";
    case DesignKind::uniform: return "uniform";
    }
    return "?";
}

SampleDesign sobol(int dim, int n, std::uint64_t seed, bool scramble)
{
    if (dim < 1) {
        throw ParameterError("dim", "must be >= 1");
    }
    if (n < 1) {
        throw ParameterError("n", "must be >= 1");
    }
    if (dim > kMaxSobolDim) {
        throw CapabilityError("Sobol' direction numbers cover dimensions up to " + std::to_string(kMaxSobolDim) +
                              ", requested " + std::to_string(dim));
    }

    SampleDesign design{scramble ? DesignKind::scrambled_sobol : DesignKind::sobol, dim, n, seed,
                        Eigen::MatrixXd(n, dim)};
    Rng rng(seed);
    for (int d = 0; d < dim; ++d) {
        const auto v = direction_vectors(d);
        const std::uint32_t shift = scramble ? static_cast<std::uint32_t>(rng.next_u64() >> 32) : 0u;
        std::uint32_t x = 0;
        for (int i = 0; i < n; ++i) {
            if (i > 0) {
                // Gray-code order: flip the direction of the lowest zero bit of i-1.
                const auto c = static_cast<unsigned>(std::countr_one(static_cast<unsigned>(i - 1)));
                x ^= v[c];
            }
            design.points(i, d) = static_cast<double>(x ^ shift) * 0x1.0p-32;
        }
    }
    return design;
}

SampleDesign uniform(int dim, int n, std::uint64_t seed)
{
    if (dim < 1) {
        throw ParameterError("dim", "must be >= 1");
    }
    if (n < 1) {
        throw ParameterError("n", "must be >= 1");
    }
    SampleDesign design{DesignKind::uniform, dim, n, seed, Eigen::MatrixXd(n, dim)};
    Rng rng(seed);
    for (int i = 0; i < n; ++i) {
        for (int d = 0; d < dim; ++d) {
            design.points(i, d) = rng.uniform();
        }
    }
    return design;
}

Eigen::MatrixXd scale_to_box(const SampleDesign& design, double lo, double hi)
{
    if (!(lo < hi)) {
        throw ParameterError("lo", "must be below hi");
    }
    return (design.points.array() * (hi - lo) + lo).matrix();
}

Eigen::MatrixXd unscale_from_box(const Eigen::MatrixXd& points, double lo, double hi)
{
    if (!(lo < hi)) {
        throw ParameterError("lo", "must be below hi");
    }
    return ((points.array() - lo) / (hi - lo)).matrix();
}

int stratification_violations(const Eigen::MatrixXd& points, std::span<const int> exponents)
{
    if (static_cast<Eigen::Index>(exponents.size()) != points.cols()) {
        throw ParameterError("exponents", "need one exponent per coordinate");
    }
    const int m = std::accumulate(exponents.begin(), exponents.end(), 0);
    const auto n = static_cast<long long>(points.rows());
    const long long cells = 1LL << m;
    if (n % cells != 0) {
        throw ParameterError("exponents", "2^m must divide the number of points");
    }
    std::vector<long long> counts(static_cast<std::size_t>(cells), 0);
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        long long cell = 0;
        for (std::size_t d = 0; d < exponents.size(); ++d) {
            const auto slots = 1LL << exponents[d];
            const auto k = std::min(slots - 1, static_cast<long long>(std::floor(points(i, static_cast<Eigen::Index>(d)) * slots)));
            cell = cell * slots + k;
        }
        ++counts[static_cast<std::size_t>(cell)];
    }
    const long long expected = n / cells;
    int bad = 0;
    for (long long c : counts) {
        bad += c != expected ? 1 : 0;
    }
    return bad;
}

} // namespace mabbob::sampling
