#include "mabbob/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <set>
#include <string>

namespace fs = std::filesystem;
using namespace mabbob;

namespace {

const fs::path& workdir()
{
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "mabbob_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int cli(const std::string& args)
{
    const std::string cmd = "cd '" + workdir().string() + "' && '" MABBOB_CLI "' " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& name)
{
    return io::read_file(workdir() / name);
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("generate is byte-stable and on the simplex")
{
    REQUIRE(cli("generate --count 1000 --dim 5 --threshold 0.85 --seed 1 --out g1.json") == 0);
    REQUIRE(cli("generate --count 1000 --dim 5 --threshold 0.85 --seed 1 --out g2.json") == 0);
    CHECK(slurp("g1.json") == slurp("g2.json"));
    const auto specs = io::read_specs(workdir() / "g1.json");
    CHECK(specs.size() == 1000);
    for (const auto& s : specs) {
        double sum = 0.0;
        for (double w : s.weights) {
            REQUIRE(w >= 0.0);
            sum += w;
        }
        REQUIRE(std::abs(sum - 1.0) < 1e-12);
    }
    const std::string meta = slurp("g1.json.meta");
    CHECK(meta.find("\"threshold\":0.85") != std::string::npos);
    CHECK(meta.find("\"subcommand\":\"generate\"") != std::string::npos);
}

TEST_CASE("pure BBOB mode")
{
    REQUIRE(cli("generate --pure-bbob --dim 3 --out pure.json") == 0);
    const auto specs = io::read_specs(workdir() / "pure.json");
    REQUIRE(specs.size() == 120);
    std::set<std::pair<int, int>> seen;
    for (const auto& s : specs) {
        int hot = 0;
        for (int f = 0; f < 24; ++f) {
            if (s.weights[f] == 1.0) {
                hot = f + 1;
            }
        }
        REQUIRE(hot > 0);
        seen.insert({hot, s.iids[0]});
    }
    CHECK(seen.size() == 120);
}

TEST_CASE("bench counts run groups")
{
    REQUIRE(cli("generate --count 2 --dim 2 --seed 4 --out two.json") == 0);
    REQUIRE(cli("bench --instances two.json --budget 100 --runs 2 --out two.csv") == 0);
    const auto logs = io::parse_runlogs(slurp("two.csv"));
    CHECK(logs.size() == 20);
    for (const auto& l : logs) {
        CHECK(l.budget == 100);
    }
}

TEST_CASE("metrics on a log that hits everything at once")
{
    io::write_file_atomic(workdir() / "hit.csv",
                          "problem_id,algorithm,run,eval_index,best_precision\n0,x,0,1,1e-9\n0,x,0,10,1e-9\n");
    REQUIRE(cli("metrics --runlogs hit.csv --out hit") == 0);
    CHECK(slurp("hit/auc_table.csv") == "problem,algorithm,auc\n0,x,1\n");
}

TEST_CASE("input errors exit with 2")
{
    CHECK(cli("generate --count 0 --out bad.json") == 2);
    CHECK(cli("bench --instances missing.json --out x.csv") == 2);
    CHECK(cli("frobnicate") == 2);
    CHECK(cli("generate --out /nonexistent/dir/x.json") == 2);
    io::write_file_atomic(workdir() / "broken.json", "[\n{\"dim\": 2}\n]\n");
    CHECK(cli("bench --instances broken.json --out x.csv") == 2);
    CHECK(cli("sample --dim 22 --n 4 --out s.csv") == 2);
}

TEST_CASE("sample and evaluate")
{
    REQUIRE(cli("sample --dim 2 --n 8 --design sobol --out s.csv") == 0);
    CHECK(slurp("s.csv").substr(0, 40).find("index,x1,x2\n0,0,0\n1,0.5,0.5") == 0);
    REQUIRE(cli("generate --pure-bbob --dim 2 --out p2.json") == 0);
    const auto specs = io::read_specs(workdir() / "p2.json");
    io::write_file_atomic(workdir() / "pts.csv", "index,x1,x2\n0," + io::format_double(specs[0].x_opt[0]) + "," +
                                                     io::format_double(specs[0].x_opt[1]) + "\n");
    REQUIRE(cli("evaluate --instances p2.json --points pts.csv --out v.csv") == 0);
    const std::string v = slurp("v.csv");
    CHECK(v.find("0,0,1e-08\n") != std::string::npos);
}

TEST_CASE("desk-scale pipeline is deterministic")
{
    REQUIRE(cli("generate --count 50 --dim 2 --seed 5 --out desk.json") == 0);
    REQUIRE(cli("bench --instances desk.json --budget 2000 --runs 5 --seed 6 --out desk.csv") == 0);
    REQUIRE(cli("bench --instances desk.json --budget 2000 --runs 5 --seed 6 --threads 2 --out desk2.csv") == 0);
    CHECK(slurp("desk.csv") == slurp("desk2.csv"));
    REQUIRE(cli("features --instances desk.json --designs 1 --points-per-dim 100 --out desk_f.csv") == 0);
    REQUIRE(cli("metrics --runlogs desk.csv --instances desk.json --features desk_f.csv --out m1") == 0);
    REQUIRE(cli("metrics --runlogs desk2.csv --instances desk.json --features desk_f.csv --out m2") == 0);
    for (const char* f : {"auc_table.csv", "ranks.csv", "rank_histogram.csv", "selector_report.csv",
                          "selector_losses.csv"}) {
        CAPTURE(f);
        CHECK(slurp(std::string("m1/") + f) == slurp(std::string("m2/") + f));
    }
    CHECK(io::parse_auc_table(slurp("m1/auc_table.csv")).size() == 250);
}

}
