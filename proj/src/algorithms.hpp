#pragma once

// Internal: optimizer kernels and the evaluation tracker they run against.

#include "mabbob/harness.hpp"
#include "mabbob/rng.hpp"

#include <span>
#include <vector>

namespace mabbob::harness::detail {

// Thrown by Tracker when a kernel asks for an evaluation it may not make.
struct Stop {};

class Tracker {
public:
    Tracker(const Objective& f, double optimum_value, int dim, int budget, RunLog& log)
        : f_(f), optimum_(optimum_value), dim_(dim), budget_(budget), log_(log) {}

    int dim() const noexcept { return dim_; }
    int remaining() const noexcept { return budget_ - log_.evaluations; }

    /// Objective value at x. Throws Stop once the budget is spent or the
    /// precision floor has been reached.
    double operator()(std::span<const double> x);

private:
    const Objective& f_;
    double optimum_;
    int dim_;
    int budget_;
    RunLog& log_;
    bool solved_ = false;
};

inline constexpr double kLower = -5.0;
inline constexpr double kUpper = 5.0;

void clamp_to_box(std::span<double> x) noexcept;
std::vector<double> uniform_point(Rng& rng, int dim);

void random_search(Tracker& t, Rng& rng, const AlgorithmSpec& spec);
void one_plus_one_es(Tracker& t, Rng& rng, const AlgorithmSpec& spec);
void nelder_mead_restart(Tracker& t, Rng& rng, const AlgorithmSpec& spec);
void de_rand_1_bin(Tracker& t, Rng& rng, const AlgorithmSpec& spec);
void diag_gaussian_adapt(Tracker& t, Rng& rng, const AlgorithmSpec& spec);

} // namespace mabbob::harness::detail
