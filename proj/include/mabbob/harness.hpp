#pragma once

#include "mabbob/generator.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mabbob::harness {

enum class AlgorithmId { random_search, one_plus_one_es, nelder_mead_restart, de_rand_1_bin, diag_gaussian_adapt };

std::string_view to_string(AlgorithmId id) noexcept;
/// Throws ParameterError for unknown names.
AlgorithmId parse_algorithm(std::string_view name);

/// Precision values are floored here before logging; reaching it ends a run.
inline constexpr double kPrecisionLogFloor = 1.0e-16;

struct AlgorithmSpec {
    AlgorithmId id = AlgorithmId::random_search;
    std::map<std::string, double> hyperparameters;
    std::uint64_t seed = 0;

    std::string_view name() const noexcept { return to_string(id); }
    /// Throws ParameterError if the hyperparameter is missing.
    double param(const std::string& key) const;
};

/// Built-in defaults:
///   random-search        (none)
///   one-plus-one-es      sigma0 = 2, 1/5th success rule, restart when sigma < 1e-10
///   nelder-mead-restart  initial_step = 1, restart when simplex diameter < 1e-12
///   de-rand-1-bin        population = 10 * dim, F = 0.5, CR = 0.9
///   diag-gaussian-adapt  separable CMA-ES, population 4 + floor(3 ln dim), sigma0 = 2,
///                        restart when sigma * sqrt(max C) < 1e-12
AlgorithmSpec default_spec(AlgorithmId id);

/// The five built-ins, in the order listed above.
std::vector<AlgorithmSpec> portfolio();

struct Event {
    int eval_index = 0;
    double best_precision = 0.0;

    friend bool operator==(const Event&, const Event&) = default;
};

/// Improvement trajectory of one run. `events` holds every strict improvement
/// of the best-so-far precision; `evaluations` is the number of objective
/// calls actually made.
struct RunLog {
    int problem_id = 0;
    std::string algorithm;
    int run_index = 0;
    int budget = 0;
    int evaluations = 0;
    std::vector<Event> events;
    std::optional<std::string> error;

    double final_precision() const { return events.empty() ? 0.0 : events.back().best_precision; }

    friend bool operator==(const RunLog&, const RunLog&) = default;
};

using Objective = std::function<double(std::span<const double>)>;

/// Runs `alg` on a generic objective over [-5, 5]^dim. Precision is
/// f(x) - optimum_value floored at kPrecisionLogFloor.
RunLog run(const AlgorithmSpec& alg, const Objective& f, double optimum_value, int dim, int budget, std::uint64_t seed);

/// Runs `alg` on a generated problem (optimum value 1e-8). Throws
/// ParameterError for budget < 1. A non-finite objective value stops the run
/// and is reported in RunLog::error.
RunLog run(const AlgorithmSpec& alg, const MAProblem& problem, int budget, std::uint64_t seed, int problem_id = 0,
           int run_index = 0);

/// Seed of run `run_index` of algorithm `alg_index` on problem `problem_id`.
std::uint64_t run_seed(std::uint64_t master, int problem_id, int alg_index, int run_index) noexcept;

/// Every (problem, algorithm, run) combination, ordered by problem, then
/// algorithm, then run. Work is spread over `threads` workers (0 = hardware
/// concurrency); the output order does not depend on it.
std::vector<RunLog> run_batch(std::span<const MAProblem> problems, std::span<const AlgorithmSpec> algorithms,
                              int budget, int runs, std::uint64_t master_seed, unsigned threads = 0,
                              const std::function<void(std::size_t, std::size_t)>& progress = {});

} // namespace mabbob::harness
