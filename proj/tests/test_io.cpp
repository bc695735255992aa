#include "mabbob/errors.hpp"
#include "mabbob/generator.hpp"
#include "mabbob/io.hpp"
#include "mabbob/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

using namespace mabbob;

namespace {

std::vector<ProblemSpec> some_specs()
{
    std::vector<ProblemSpec> specs;
    for (std::uint64_t i = 0; i < 5; ++i) {
        Rng rng(derive_seed(3, i));
        specs.push_back(random_spec(rng, {0.85, 3, derive_seed(3, i), 1}));
    }
    specs.push_back(pure_bbob_spec(24, 5, 3));
    return specs;
}

int error_line(const std::string& text)
{
    try {
        io::parse_specs(text, "t.json");
    } catch (const ParseError& e) {
        return static_cast<int>(e.line());
    }
    return -1;
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("doubles round-trip at 17 digits")
{
    Rng rng(1);
    for (int k = 0; k < 1000; ++k) {
        const double v = std::ldexp(rng.uniform(-1.0, 1.0), static_cast<int>(rng.uniform_int(-60, 60)));
        REQUIRE(std::stod(io::format_double(v)) == v);
    }
    CHECK(io::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("spec files round-trip exactly")
{
    const auto specs = some_specs();
    const std::string text = io::specs_to_json(specs);
    const auto back = io::parse_specs(text);
    CHECK(back == specs);
    CHECK(io::specs_to_json(back) == text);
    const MAProblem a = make_problem(specs[0]);
    const MAProblem b = make_problem(back[0]);
    std::vector<double> x{0.3, -1.0, 2.2};
    CHECK(a(x) == b(x));
}

TEST_CASE("spec parse errors carry line and field")
{
    const auto specs = some_specs();
    std::string text = io::specs_to_json(specs);
    CHECK(error_line("[\n{\"dim\": 2,}\n]") == 2);

    // Third object (line 4) gets a weight vector that does not sum to 1.
    std::string bad = text;
    std::size_t pos = 0;
    for (int k = 0; k < 3; ++k) {
        pos = bad.find("\"weights\": [", pos + 1);
    }
    bad.insert(pos + std::string("\"weights\": [").size(), "0.5, ");
    try {
        io::parse_specs(bad, "t.json");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
        CHECK(e.field() == "weights");
    }

    std::string no_dim = text;
    no_dim.replace(no_dim.find("\"dim\": 3"), 8, "\"dimx\": 3");
    try {
        io::parse_specs(no_dim, "t.json");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.field() == "dim");
    }
    CHECK_THROWS_AS(io::parse_specs("{}"), ParseError);
}

TEST_CASE("run logs round-trip")
{
    std::vector<harness::RunLog> logs(2);
    logs[0] = {3, "random-search", 0, 100, 100, {{1, 50.0}, {7, 2.5}, {100, 0.125}}, {}};
    logs[1] = {3, "random-search", 1, 100, 42, {{1, 1e-16}}, {}};
    const std::string csv = io::runlogs_to_csv(logs);
    CHECK(csv.substr(0, csv.find('\n')) == "problem_id,algorithm,run,eval_index,best_precision");
    const auto back = io::parse_runlogs(csv);
    REQUIRE(back.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back[i].events == logs[i].events);
        CHECK(back[i].budget == logs[i].budget);
        CHECK(back[i].problem_id == logs[i].problem_id);
        CHECK(back[i].run_index == logs[i].run_index);
    }
    CHECK(io::runlogs_to_csv(back) == csv);
}

TEST_CASE("malformed run logs")
{
    const std::string header = "problem_id,algorithm,run,eval_index,best_precision\n";
    try {
        io::parse_runlogs(header + "0,a,0,1,5\n0,a,0,x,1\n", "r.csv");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.field() == "eval_index");
    }
    CHECK_THROWS_AS(io::parse_runlogs("a,b\n1,2\n"), ParseError);
    CHECK_THROWS_AS(io::parse_runlogs(header + "0,a,0,1\n"), ParseError);
    CHECK_THROWS_AS(io::parse_runlogs(header + "0,a,0,5,1\n0,a,0,3,0.5\n0,a,0,10,0.5\n"), ParseError);
}

TEST_CASE("auc tables and features")
{
    const metrics::AucTable t{{0, "a", 0.25}, {0, "b", 1.0 / 3.0}};
    CHECK(io::parse_auc_table(io::auc_table_to_csv(t)) == t);

    ela::FeatureTable ft;
    ft.columns = {"f1", "f2"};
    ft.rows = {{0.5, std::nullopt}, {-1.25, 3.0}};
    const std::vector<int> ids{4, 9};
    const std::string csv = io::features_to_csv(ids, 5, ft);
    CHECK(csv == "problem_id,dim,f1,f2\n4,5,0.5,\n9,5,-1.25,3\n");
    const auto back = io::parse_features(csv);
    CHECK(back.problem_ids == ids);
    CHECK(back.dims == std::vector<int>{5, 5});
    CHECK(back.table.columns == ft.columns);
    CHECK(back.table.rows == ft.rows);
}

TEST_CASE("atomic writes")
{
    const auto dir = std::filesystem::temp_directory_path() / "mabbob_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.txt";
    io::write_file_atomic(path, "first");
    io::write_file_atomic(path, "second");
    CHECK(io::read_file(path) == "second");
    CHECK_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
    CHECK_THROWS_AS(io::write_file_atomic(dir / "missing" / "x.txt", "x"), ParameterError);
    CHECK_THROWS_AS(io::read_file(dir / "nope.txt"), ParseError);
    std::filesystem::remove_all(dir);
}

}
