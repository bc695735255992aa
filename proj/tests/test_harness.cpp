#include "mabbob/errors.hpp"
#include "mabbob/generator.hpp"
#include "mabbob/harness.hpp"
#include "mabbob/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

using namespace mabbob;
using namespace mabbob::harness;

namespace {

void check_log(const RunLog& log)
{
    REQUIRE_FALSE(log.error.has_value());
    CHECK(log.evaluations <= log.budget);
    CHECK(log.evaluations >= 1);
    REQUIRE_FALSE(log.events.empty());
    CHECK(log.events.front().eval_index >= 1);
    for (std::size_t i = 1; i < log.events.size(); ++i) {
        CHECK(log.events[i].eval_index > log.events[i - 1].eval_index);
        CHECK(log.events[i].best_precision < log.events[i - 1].best_precision);
    }
    CHECK(log.events.back().eval_index <= log.evaluations);
    CHECK(log.final_precision() >= kPrecisionLogFloor);
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("portfolio")
{
    const auto algs = portfolio();
    REQUIRE(algs.size() == 5);
    std::set<std::string> names;
    for (const auto& a : algs) {
        names.emplace(a.name());
        CHECK(parse_algorithm(a.name()) == a.id);
    }
    CHECK(names.size() == 5);
    CHECK_THROWS_AS(parse_algorithm("cma-es"), ParameterError);
    CHECK(default_spec(AlgorithmId::de_rand_1_bin).param("CR") == 0.9);
    CHECK_THROWS_AS(default_spec(AlgorithmId::random_search).param("sigma0"), ParameterError);
}

TEST_CASE("every algorithm completes a short run")
{
    Rng rng(1);
    const MAProblem p = random_problem(rng, {0.85, 3, 1, 1});
    for (const auto& a : portfolio()) {
        CAPTURE(a.name());
        const RunLog log = run(a, p, 100, 7);
        check_log(log);
        CHECK(log.evaluations == 100);
        CHECK(log.algorithm == a.name());
    }
}

TEST_CASE("budget of one")
{
    Rng rng(2);
    const MAProblem p = random_problem(rng, {0.85, 2, 1, 1});
    const RunLog log = run(default_spec(AlgorithmId::random_search), p, 1, 3);
    REQUIRE(log.events.size() == 1);
    CHECK(log.events[0].eval_index == 1);
    CHECK(log.evaluations == 1);
    CHECK_THROWS_AS(run(default_spec(AlgorithmId::random_search), p, 0, 3), ParameterError);
}

TEST_CASE("runs are reproducible")
{
    Rng rng(3);
    const MAProblem p = random_problem(rng, {0.85, 4, 1, 1});
    for (const auto& a : portfolio()) {
        CHECK(run(a, p, 500, 11) == run(a, p, 500, 11));
    }
}

TEST_CASE("reaching the floor ends the run")
{
    const Objective flat = [](std::span<const double>) { return 0.0; };
    const RunLog log = run(default_spec(AlgorithmId::one_plus_one_es), flat, 0.0, 2, 1000, 1);
    CHECK(log.evaluations == 1);
    REQUIRE(log.events.size() == 1);
    CHECK(log.events[0].best_precision == kPrecisionLogFloor);
}

TEST_CASE("non-finite values are reported")
{
    int calls = 0;
    const Objective bad = [&](std::span<const double> x) {
        return ++calls > 5 ? std::numeric_limits<double>::quiet_NaN() : 1.0 + x[0] * x[0];
    };
    const RunLog log = run(default_spec(AlgorithmId::random_search), bad, 0.0, 2, 100, 1);
    REQUIRE(log.error.has_value());
    CHECK(log.evaluations <= 6);
}

TEST_CASE("(1+1)-ES solves the sphere")
{
    const MAProblem p = make_problem(pure_bbob_spec(1, 1, 5));
    const auto es = default_spec(AlgorithmId::one_plus_one_es);
    int solved = 0;
    for (int r = 0; r < 10; ++r) {
        const RunLog log = run(es, p, 10000, run_seed(1, 0, 1, r));
        solved += log.final_precision() <= 1e-8 ? 1 : 0;
    }
    CHECK(solved >= 9);
}

TEST_CASE("the local searchers beat random search on a rotated ellipsoid")
{
    const MAProblem p = make_problem(pure_bbob_spec(10, 1, 5));
    auto best = [&](AlgorithmId id) { return run(default_spec(id), p, 5000, 5).final_precision(); };
    const double rs = best(AlgorithmId::random_search);
    CHECK(best(AlgorithmId::nelder_mead_restart) < rs);
    CHECK(best(AlgorithmId::diag_gaussian_adapt) < rs);
    CHECK(best(AlgorithmId::de_rand_1_bin) < rs);
}

TEST_CASE("batch order and thread independence")
{
    Rng rng(4);
    std::vector<MAProblem> problems;
    for (int i = 0; i < 3; ++i) {
        problems.push_back(random_problem(rng, {0.85, 2, 1, 1}));
    }
    const auto algs = portfolio();
    const auto a = run_batch(problems, algs, 200, 2, 9, 1);
    const auto b = run_batch(problems, algs, 200, 2, 9, 4);
    REQUIRE(a.size() == 3 * 5 * 2);
    CHECK(a == b);
    std::size_t k = 0;
    for (int p = 0; p < 3; ++p) {
        for (const auto& alg : algs) {
            for (int r = 0; r < 2; ++r, ++k) {
                CHECK(a[k].problem_id == p);
                CHECK(a[k].algorithm == alg.name());
                CHECK(a[k].run_index == r);
            }
        }
    }
    // A single cell can be reproduced in isolation.
    const RunLog solo = run(algs[2], problems[1], 200, run_seed(9, 1, 2, 1), 1, 1);
    CHECK(solo == a[1 * 10 + 2 * 2 + 1]);
}

}
