#include "mabbob/errors.hpp"
#include "mabbob/sampling.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

using namespace mabbob;
using namespace mabbob::sampling;

namespace {

// Brute-force check of the (0, m, 2)-net property: every elementary box of
// shape 2^-a x 2^-(m-a) holds the same number of points.
bool is_net(const Eigen::MatrixXd& p, int m)
{
    for (int a = 0; a <= m; ++a) {
        std::map<std::pair<long, long>, int> counts;
        for (Eigen::Index i = 0; i < p.rows(); ++i) {
            const long bx = static_cast<long>(std::ldexp(p(i, 0), a));
            const long by = static_cast<long>(std::ldexp(p(i, 1), m - a));
            ++counts[{bx, by}];
        }
        const long boxes = 1L << m;
        if (static_cast<long>(counts.size()) != boxes) {
            return false;
        }
        for (const auto& [box, c] : counts) {
            if (c != p.rows() / boxes) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

TEST_SUITE("sampling") {

TEST_CASE("van der Corput first coordinate")
{
    const auto d = sobol(1, 4, 0, false);
    std::vector<double> v(d.points.data(), d.points.data() + 4);
    std::sort(v.begin(), v.end());
    CHECK(v == std::vector<double>{0.0, 0.25, 0.5, 0.75});
}

TEST_CASE("unscrambled two-dimensional sequence")
{
    const auto d = sobol(2, 8, 0, false);
    const double expected[8][2] = {{0, 0},         {0.5, 0.5},     {0.75, 0.25},   {0.25, 0.75},
                                   {0.375, 0.375}, {0.875, 0.875}, {0.625, 0.125}, {0.125, 0.625}};
    for (int i = 0; i < 8; ++i) {
        CHECK(d.points(i, 0) == expected[i][0]);
        CHECK(d.points(i, 1) == expected[i][1]);
    }
}

TEST_CASE("net property, scrambled and plain")
{
    for (int m = 1; m <= 10; ++m) {
        const int n = 1 << m;
        const auto plain = sobol(2, n, 0, false);
        CHECK(is_net(plain.points, m));
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            const auto s = sobol(2, n, seed, true);
            CHECK(is_net(s.points, m));
            for (int a = 0; a <= m; ++a) {
                const int e[2] = {a, m - a};
                CHECK(stratification_violations(s.points, e) == 0);
            }
        }
    }
}

TEST_CASE("stratification counter flags a bad design")
{
    Eigen::MatrixXd p(4, 2);
    p << 0.1, 0.1, 0.2, 0.2, 0.6, 0.6, 0.7, 0.7;
    const int e[2] = {1, 1};
    CHECK(stratification_violations(p, e) == 4); // counts 2, 0, 0, 2 against 1 each
    CHECK_FALSE(is_net(p, 2));
}

TEST_CASE("one-dimensional projections of higher dimensions are stratified")
{
    const auto d = sobol(21, 1024, 5, true);
    for (int j = 0; j < 21; ++j) {
        Eigen::MatrixXd col = d.points.col(j);
        const int e[1] = {10};
        CHECK(stratification_violations(col, e) == 0);
    }
    CHECK((d.points.array() >= 0.0).all());
    CHECK((d.points.array() < 1.0).all());
}

TEST_CASE("capability limit")
{
    CHECK_THROWS_AS(sobol(22, 8, 0, false), CapabilityError);
    CHECK_THROWS_AS(sobol(0, 8, 0, false), ParameterError);
}

TEST_CASE("seeded designs are reproducible")
{
    CHECK(sobol(3, 64, 9, true).points == sobol(3, 64, 9, true).points);
    CHECK(sobol(3, 64, 9, true).points != sobol(3, 64, 10, true).points);
    const auto u = uniform(4, 100, 3);
    CHECK(u.points == uniform(4, 100, 3).points);
    CHECK((u.points.array() >= 0.0).all());
    CHECK((u.points.array() < 1.0).all());
}

TEST_CASE("box mapping")
{
    SampleDesign d;
    d.dim = 1;
    d.n = 2;
    d.points = Eigen::MatrixXd(2, 1);
    d.points << 0.5, 0.0;
    const auto x = scale_to_box(d, -5.0, 5.0);
    CHECK(x(0, 0) == 0.0);
    CHECK(x(1, 0) == -5.0);
    const auto s = sobol(3, 32, 1, true);
    CHECK((unscale_from_box(scale_to_box(s, -5.0, 5.0), -5.0, 5.0) - s.points).cwiseAbs().maxCoeff() < 1e-12);
}

}
