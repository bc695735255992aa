#include "mabbob/harness.hpp"

#include "algorithms.hpp"
#include "mabbob/errors.hpp"
#include "mabbob/rng.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <thread>

namespace mabbob::harness {

namespace {

constexpr std::array<AlgorithmId, 5> kAll{AlgorithmId::random_search, AlgorithmId::one_plus_one_es,
                                          AlgorithmId::nelder_mead_restart, AlgorithmId::de_rand_1_bin,
                                          AlgorithmId::diag_gaussian_adapt};

} // namespace

std::string_view to_string(AlgorithmId id) noexcept
{
    switch (id) {
    case AlgorithmId::random_search: return "random-search";
    case AlgorithmId::one_plus_one_es: return "one-plus-one-es";
    case AlgorithmId::nelder_mead_restart: return "nelder-mead-restart";
    case AlgorithmId::de_rand_1_bin: return "de-rand-1-bin";
    case AlgorithmId::diag_gaussian_adapt: return "diag-gaussian-adapt";
    }
    return "?";
}

AlgorithmId parse_algorithm(std::string_view name)
{
    for (AlgorithmId id : kAll) {
        if (to_string(id) == name) {
            return id;
        }
    }
    throw ParameterError("algorithm", "unknown algorithm '" + std::string(name) + "'");
}

double AlgorithmSpec::param(const std::string& key) const
{
    const auto it = hyperparameters.find(key);
    if (it == hyperparameters.end()) {
        throw ParameterError(key, "missing hyperparameter for " + std::string(name()));
    }
    return it->second;
}

AlgorithmSpec default_spec(AlgorithmId id)
{
    AlgorithmSpec spec;
    spec.id = id;
    switch (id) {
    case AlgorithmId::random_search:
        break;
    case AlgorithmId::one_plus_one_es:
        spec.hyperparameters = {{"sigma0", 2.0}, {"restart_sigma", 1e-10}};
        break;
    case AlgorithmId::nelder_mead_restart:
        spec.hyperparameters = {{"initial_step", 1.0}, {"restart_diameter", 1e-12}};
        break;
    case AlgorithmId::de_rand_1_bin:
        spec.hyperparameters = {{"population_factor", 10.0}, {"F", 0.5}, {"CR", 0.9}};
        break;
    case AlgorithmId::diag_gaussian_adapt:
        spec.hyperparameters = {{"sigma0", 2.0}, {"restart_scale", 1e-12}};
        break;
    }
    return spec;
}

std::vector<AlgorithmSpec> portfolio()
{
    std::vector<AlgorithmSpec> out;
    for (AlgorithmId id : kAll) {
        out.push_back(default_spec(id));
    }
    return out;
}

RunLog run(const AlgorithmSpec& alg, const Objective& f, double optimum_value, int dim, int budget, std::uint64_t seed)
{
    if (budget < 1) {
        throw ParameterError("budget", "must be >= 1");
    }
    if (dim < 1) {
        throw ParameterError("dim", "must be >= 1");
    }
    RunLog log;
    log.algorithm = std::string(alg.name());
    log.budget = budget;

    detail::Tracker tracker(f, optimum_value, dim, budget, log);
    Rng rng(seed);
    try {
        switch (alg.id) {
        case AlgorithmId::random_search: detail::random_search(tracker, rng, alg); break;
        case AlgorithmId::one_plus_one_es: detail::one_plus_one_es(tracker, rng, alg); break;
        case AlgorithmId::nelder_mead_restart: detail::nelder_mead_restart(tracker, rng, alg); break;
        case AlgorithmId::de_rand_1_bin: detail::de_rand_1_bin(tracker, rng, alg); break;
        case AlgorithmId::diag_gaussian_adapt: detail::diag_gaussian_adapt(tracker, rng, alg); break;
        }
    } catch (const detail::Stop&) {
    } catch (const EvaluationError& e) {
        log.error = e.what();
    }
    return log;
}

RunLog run(const AlgorithmSpec& alg, const MAProblem& problem, int budget, std::uint64_t seed, int problem_id,
           int run_index)
{
    const Objective f = [&problem](std::span<const double> x) { return problem(x); };
    RunLog log = run(alg, f, kOptimumValue, problem.dim(), budget, seed);
    log.problem_id = problem_id;
    log.run_index = run_index;
    return log;
}

std::uint64_t run_seed(std::uint64_t master, int problem_id, int alg_index, int run_index) noexcept
{
    const std::uint64_t per_problem = derive_seed(master, static_cast<std::uint64_t>(problem_id));
    const std::uint64_t per_alg = derive_seed(per_problem, static_cast<std::uint64_t>(alg_index));
    return derive_seed(per_alg, static_cast<std::uint64_t>(run_index));
}

std::vector<RunLog> run_batch(std::span<const MAProblem> problems, std::span<const AlgorithmSpec> algorithms,
                              int budget, int runs, std::uint64_t master_seed, unsigned threads,
                              const std::function<void(std::size_t, std::size_t)>& progress)
{
    if (runs < 1) {
        throw ParameterError("runs", "must be >= 1");
    }
    const std::size_t per_problem = algorithms.size() * static_cast<std::size_t>(runs);
    const std::size_t total = problems.size() * per_problem;
    std::vector<RunLog> logs(total);

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> finished{0};
    std::mutex progress_mutex;
    auto worker = [&] {
        for (std::size_t task = next++; task < total; task = next++) {
            const std::size_t p = task / per_problem;
            const std::size_t a = (task % per_problem) / static_cast<std::size_t>(runs);
            const int r = static_cast<int>(task % static_cast<std::size_t>(runs));
            const int pid = static_cast<int>(p);
            logs[task] = run(algorithms[a], problems[p], budget,
                             run_seed(master_seed, pid, static_cast<int>(a), r), pid, r);
            const std::size_t done = ++finished;
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(done, total);
            }
        }
    };

    unsigned count = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    count = static_cast<unsigned>(std::min<std::size_t>(count, std::max<std::size_t>(total, 1)));
    if (count <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < count; ++i) {
            pool.emplace_back(worker);
        }
    }
    return logs;
}

} // namespace mabbob::harness
