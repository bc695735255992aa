#include "mabbob/calibration.hpp"
#include "mabbob/errors.hpp"
#include "mabbob/generator.hpp"
#include "mabbob/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace mabbob;

namespace {

std::array<double, kComponents> raw(std::initializer_list<double> head)
{
    std::array<double, kComponents> u{};
    std::copy(head.begin(), head.end(), u.begin());
    return u;
}

std::vector<double> random_point(Rng& rng, int dim)
{
    std::vector<double> x(static_cast<std::size_t>(dim));
    for (double& v : x) {
        v = rng.uniform(-5.0, 5.0);
    }
    return x;
}

} // namespace

TEST_SUITE("generator") {

TEST_CASE("thresholding worked example")
{
    const auto u = raw({0.9, 0.5, 0.3, 0.1});
    const auto w = threshold_weights(u, 0.85);
    REQUIRE(w.has_value());
    CHECK((*w)[1] == doctest::Approx(0.75));
    CHECK((*w)[2] == doctest::Approx(0.25));
    CHECK(w->nonzero_count() == 2);
}

TEST_CASE("one value above T and third-highest 0.4 keeps two weights")
{
    const auto u = raw({0.95, 0.6, 0.4, 0.2, 0.1});
    const auto w = threshold_weights(u, 0.85);
    REQUIRE(w.has_value());
    CHECK(w->nonzero_count() == 2);
}

TEST_CASE("degenerate draws are rejected")
{
    CHECK_FALSE(threshold_weights(raw({}), 0.85).has_value());
    CHECK_FALSE(threshold_weights(raw({0.5, 0.5, 0.5}), 0.85).has_value());
}

TEST_CASE("sampled weights lie on the simplex")
{
    Rng rng(1);
    for (int k = 0; k < 1000; ++k) {
        const WeightVector w = sample_weights(rng, 0.85);
        const auto& v = w.values();
        CHECK(std::accumulate(v.begin(), v.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(*std::min_element(v.begin(), v.end()) >= 0.0);
        CHECK(w.nonzero_count() >= 2);
    }
}

TEST_CASE("mean nonzero count matches the binomial oracle")
{
    // count = max(2, #{u_i > T}) with u_i iid uniform.
    const double expected = oracle::expected_count(24, 0.15);
    CHECK(expected == doctest::Approx(3.7256).epsilon(1e-3));
    Rng rng(2024);
    const int n = 20000;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        sum += sample_weights(rng, 0.85).nonzero_count();
    }
    // Four standard errors (sd of the count is below 1.8).
    CHECK(std::abs(sum / n - expected) < 4.0 * 1.8 / std::sqrt(n));
}

TEST_CASE("threshold 1 keeps exactly the top two")
{
    Rng rng(3);
    for (int k = 0; k < 2000; ++k) {
        REQUIRE(sample_weights(rng, 1.0).nonzero_count() == 2);
    }
}

TEST_CASE("one-hot vectors")
{
    for (int fid = 1; fid <= kComponents; ++fid) {
        const WeightVector w = one_hot(fid);
        const auto& v = w.values();
        CHECK(std::accumulate(v.begin(), v.end(), 0.0) == 1.0);
        CHECK(w[fid] == 1.0);
        CHECK(w.is_one_hot());
    }
    CHECK_THROWS_AS(one_hot(0), ParameterError);
}

TEST_CASE("weight validation")
{
    CHECK_THROWS_AS(WeightVector(raw({0.5, 0.6})), ParameterError);
    CHECK_THROWS_AS(WeightVector(raw({1.5, -0.5})), ParameterError);
    CHECK_THROWS_AS(WeightVector(raw({0.5})), ParameterError);
    CHECK_NOTHROW(WeightVector(raw({0.5, 0.5})));
}

TEST_CASE("optimum identity on random problems")
{
    Rng rng(5);
    for (int dim : {2, 5, 10}) {
        for (int k = 0; k < 30; ++k) {
            const MAProblem p = random_problem(rng, {0.85, dim, 1, 1});
            CHECK(p(p.x_opt()) == doctest::Approx(kOptimumValue).epsilon(1e-12));
            for (int j = 0; j < 20; ++j) {
                REQUIRE(p(random_point(rng, dim)) >= kOptimumValue);
            }
        }
    }
}

TEST_CASE("one-hot sphere at the origin")
{
    std::array<int, kComponents> iids;
    iids.fill(1);
    const auto scale = calibration::table_defaults().values;
    const MAProblem p = make_problem(one_hot(1), iids, std::vector<double>(3, 0.0), 3, scale);
    CHECK(p(std::vector<double>(3, 0.0)) == doctest::Approx(1e-8));
    Rng rng(6);
    for (int k = 0; k < 100; ++k) {
        const auto x = random_point(rng, 3);
        double p1 = 0.0;
        for (double v : x) {
            p1 += v * v;
        }
        const double expected = std::pow(10.0, 10.0 * (std::log10(std::max(p1, 1e-8)) + 8.0) / 11.0 - 8.0);
        CHECK(p(x) == doctest::Approx(expected).epsilon(1e-10));
        CHECK(p(x) > 1e-8);
    }
}

TEST_CASE("one-hot problems order points like the raw component")
{
    Rng rng(7);
    std::array<int, kComponents> iids;
    iids.fill(4);
    const auto scale = calibration::table_defaults().values;
    const std::vector<double> x_new{1.0, -2.0, 0.5};
    const MAProblem p = make_problem(one_hot(7), iids, x_new, 3, scale);
    const bbob::Instance& f7 = p.component(7);
    auto precision = [&](const std::vector<double>& x) {
        std::vector<double> s(3);
        for (int i = 0; i < 3; ++i) {
            s[i] = x[i] - x_new[i] + f7.x_opt()[i];
        }
        return f7(s) - f7.f_opt();
    };
    for (int k = 0; k < 200; ++k) {
        const auto a = random_point(rng, 3);
        const auto b = random_point(rng, 3);
        const double pa = precision(a), pb = precision(b);
        if (pa > 1e-8 && pb > 1e-8 && pa != pb) {
            CHECK((p(a) < p(b)) == (pa < pb));
        }
    }
    CHECK(p.component_precision(7, x_new) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("same seed, same problem; nested optima across dimensions")
{
    const GeneratorConfig c2{0.85, 2, 7, 1};
    const GeneratorConfig c5{0.85, 5, 7, 1};
    Rng a(7), b(7), c(7);
    const ProblemSpec s1 = random_spec(a, c5);
    const ProblemSpec s2 = random_spec(b, c5);
    CHECK(s1 == s2);
    const ProblemSpec low = random_spec(c, c2);
    CHECK(low.weights == s1.weights);
    CHECK(low.iids == s1.iids);
    CHECK(std::equal(low.x_opt.begin(), low.x_opt.end(), s1.x_opt.begin()));
    CHECK(restrict_dimension(s1, 2) == low);

    Rng rng(8);
    const MAProblem p = make_problem(s1);
    const MAProblem q = make_problem(s2);
    for (int k = 0; k < 100; ++k) {
        const auto x = random_point(rng, 5);
        REQUIRE(p(x) == q(x));
    }
    CHECK(p.spec() == s1);
}

TEST_CASE("sampled optima are uniform on [-5, 5]")
{
    Rng rng(9);
    std::vector<double> xs;
    for (int k = 0; k < 1000; ++k) {
        const ProblemSpec s = random_spec(rng, {0.85, 5, 1, 1});
        for (double v : s.x_opt) {
            REQUIRE(std::abs(v) <= 5.0);
            xs.push_back(v);
        }
        for (int iid : s.iids) {
            REQUIRE(iid >= 1);
            REQUIRE(iid <= 100);
        }
    }
    // Kolmogorov-Smirnov against U(-5, 5); critical value at alpha = 0.01.
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double cdf = (xs[i] + 5.0) / 10.0;
        d = std::max({d, std::abs(cdf - i / n), std::abs((i + 1) / n - cdf)});
    }
    CHECK(d < 1.628 / std::sqrt(n));
}

TEST_CASE("problem validation")
{
    std::array<int, kComponents> iids;
    iids.fill(1);
    auto scale = calibration::table_defaults().values;
    const WeightVector w = one_hot(1);
    CHECK_THROWS_AS(make_problem(w, iids, {0.0, 6.0}, 2, scale), ParameterError);
    CHECK_THROWS_AS(make_problem(w, iids, {0.0}, 2, scale), ParameterError);
    iids[3] = 101;
    CHECK_THROWS_AS(make_problem(w, iids, {0.0, 0.0}, 2, scale), ParameterError);
    iids[3] = 1;
    scale[0] = 0.0;
    CHECK_THROWS_AS(make_problem(w, iids, {0.0, 0.0}, 2, scale), ParameterError);
    scale = calibration::table_defaults().values;
    const MAProblem p = make_problem(w, iids, {0.0, 0.0}, 2, scale);
    CHECK_THROWS_AS(p(std::vector<double>{1.0}), ParameterError);
}

TEST_CASE("pure BBOB spec reproduces the component optimum")
{
    for (int fid = 1; fid <= kComponents; ++fid) {
        const ProblemSpec s = pure_bbob_spec(fid, 2, 3);
        const MAProblem p = make_problem(s);
        CHECK(p.weights().is_one_hot());
        CHECK(s.x_opt == bbob::make_instance(fid, 2, 3).x_opt());
        CHECK(p(s.x_opt) == doctest::Approx(kOptimumValue).epsilon(1e-12));
    }
}

}
