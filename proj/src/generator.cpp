#include "mabbob/generator.hpp"

#include "mabbob/calibration.hpp"
#include "mabbob/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace mabbob {

namespace {

constexpr int kMaxIid = 100;
constexpr double kBoxBound = 5.0;

} // namespace

WeightVector::WeightVector(const std::array<double, kComponents>& w) : w_(w)
{
    double sum = 0.0;
    int positive = 0;
    bool has_one = false;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        if (!(w_[i] >= 0.0) || !std::isfinite(w_[i])) {
            throw ParameterError("weights", "entry " + std::to_string(i + 1) + " is negative or not finite");
        }
        sum += w_[i];
        positive += w_[i] > 0.0 ? 1 : 0;
        has_one = has_one || w_[i] == 1.0;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw ParameterError("weights", "must sum to 1, got " + std::to_string(sum));
    }
    if (positive < 2 && !(positive == 1 && has_one)) {
        throw ParameterError("weights", "need two positive entries or a single entry equal to 1");
    }
}

int WeightVector::nonzero_count() const noexcept
{
    return static_cast<int>(std::count_if(w_.begin(), w_.end(), [](double v) { return v > 0.0; }));
}

std::optional<WeightVector> threshold_weights(std::span<const double, kComponents> u, double threshold)
{
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw ParameterError("threshold", "must be in [0, 1]");
    }
    std::array<double, kComponents> sorted;
    std::copy(u.begin(), u.end(), sorted.begin());
    std::nth_element(sorted.begin(), sorted.begin() + 2, sorted.end(), std::greater<>());
    const double t = std::min(threshold, sorted[2]);

    std::array<double, kComponents> w{};
    double total = 0.0;
    int positive = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::max(0.0, u[i] - t);
        total += w[i];
        positive += w[i] > 0.0 ? 1 : 0;
    }
    if (positive < 2) {
        return std::nullopt;
    }
    for (double& v : w) {
        v /= total;
    }
    return WeightVector(w);
}

WeightVector sample_weights(Rng& rng, double threshold)
{
    for (;;) {
        std::array<double, kComponents> u;
        for (double& v : u) {
            v = rng.uniform();
        }
        if (auto w = threshold_weights(u, threshold)) {
            return *w;
        }
    }
}

WeightVector one_hot(int fid)
{
    if (fid < 1 || fid > kComponents) {
        throw ParameterError("fid", "must be in 1..24, got " + std::to_string(fid));
    }
    std::array<double, kComponents> w{};
    w[static_cast<std::size_t>(fid - 1)] = 1.0;
    return WeightVector(w);
}

MAProblem make_problem(const WeightVector& weights, const std::array<int, kComponents>& iids,
                       std::vector<double> x_opt_new, int dim, const std::array<double, kComponents>& scale)
{
    if (dim < 2) {
        throw ParameterError("dim", "must be >= 2, got " + std::to_string(dim));
    }
    if (static_cast<int>(x_opt_new.size()) != dim) {
        throw ParameterError("x_opt", "expected length " + std::to_string(dim) + ", got " +
                                          std::to_string(x_opt_new.size()));
    }
    for (double v : x_opt_new) {
        if (!(v >= -kBoxBound && v <= kBoxBound)) {
            throw ParameterError("x_opt", "coordinates must lie in [-5, 5]");
        }
    }
    for (std::size_t i = 0; i < iids.size(); ++i) {
        if (iids[i] < 1 || iids[i] > kMaxIid) {
            throw ParameterError("iids", "entry " + std::to_string(i + 1) + " must be in 1..100, got " +
                                             std::to_string(iids[i]));
        }
        if (!(scale[i] > 0.0) || !std::isfinite(scale[i])) {
            throw ParameterError("scale_factors", "entry " + std::to_string(i + 1) + " must be positive");
        }
    }

    MAProblem p(weights);
    p.dim_ = dim;
    p.iids_ = iids;
    p.x_opt_ = std::move(x_opt_new);
    p.scale_ = scale;
    p.components_.reserve(kComponents);
    for (int fid = 1; fid <= kComponents; ++fid) {
        p.components_.push_back(bbob::make_instance(fid, iids[fid - 1], dim));
        if (weights[fid] > 0.0) {
            p.active_.push_back(fid - 1);
        }
    }
    return p;
}

MAProblem make_problem(const ProblemSpec& spec)
{
    MAProblem p = make_problem(WeightVector(spec.weights), spec.iids, spec.x_opt, spec.dim, spec.scale_factors);
    p.seed_ = spec.seed;
    return p;
}

void MAProblem::check_dim(std::span<const double> x) const
{
    if (static_cast<int>(x.size()) != dim_) {
        throw ParameterError("x", "expected length " + std::to_string(dim_) + ", got " + std::to_string(x.size()));
    }
}

double MAProblem::component_precision_unchecked(int index, const double* x, double* shifted) const
{
    const bbob::Instance& inst = components_[static_cast<std::size_t>(index)];
    const double* own = inst.x_opt().data();
    for (int j = 0; j < dim_; ++j) {
        shifted[j] = (x[j] - x_opt_[j]) + own[j];
    }
    return inst.evaluate_unchecked(shifted) - inst.f_opt();
}

double MAProblem::component_precision(int fid, std::span<const double> x) const
{
    check_dim(x);
    if (fid < 1 || fid > kComponents) {
        throw ParameterError("fid", "must be in 1..24, got " + std::to_string(fid));
    }
    std::vector<double> shifted(static_cast<std::size_t>(dim_));
    return component_precision_unchecked(fid - 1, x.data(), shifted.data());
}

double MAProblem::log_combination(std::span<const double> x) const
{
    check_dim(x);
    thread_local std::vector<double> shifted;
    if (static_cast<int>(shifted.size()) < dim_) {
        shifted.resize(static_cast<std::size_t>(dim_));
    }
    double combined = 0.0;
    for (int index : active_) {
        const double precision = component_precision_unchecked(index, x.data(), shifted.data());
        if (!std::isfinite(precision)) {
            throw EvaluationError("component f" + std::to_string(index + 1) + " (" +
                                  std::string(bbob::function_name(index + 1)) + ") returned a non-finite value");
        }
        const double log_precision = std::log10(std::max(precision, kPrecisionFloor)) + 8.0;
        combined += weights_.values()[static_cast<std::size_t>(index)] * log_precision /
                    scale_[static_cast<std::size_t>(index)];
    }
    return combined;
}

double MAProblem::operator()(std::span<const double> x) const
{
    return std::pow(10.0, 10.0 * log_combination(x) - 8.0);
}

ProblemSpec MAProblem::spec() const
{
    return ProblemSpec{dim_, weights_.values(), iids_, x_opt_, scale_, seed_};
}

double evaluate(const MAProblem& problem, std::span<const double> x)
{
    return problem(x);
}

ProblemSpec random_spec(Rng& rng, const GeneratorConfig& cfg)
{
    if (cfg.dim < 2) {
        throw ParameterError("dim", "must be >= 2, got " + std::to_string(cfg.dim));
    }
    ProblemSpec spec;
    spec.dim = cfg.dim;
    spec.seed = cfg.seed;
    spec.weights = sample_weights(rng, cfg.threshold).values();
    for (int& iid : spec.iids) {
        iid = static_cast<int>(rng.uniform_int(1, kMaxIid));
    }
    spec.x_opt.resize(static_cast<std::size_t>(cfg.dim));
    for (double& v : spec.x_opt) {
        v = rng.uniform(-kBoxBound, kBoxBound);
    }
    spec.scale_factors = calibration::table_defaults().values;
    return spec;
}

MAProblem random_problem(Rng& rng, const GeneratorConfig& cfg)
{
    return make_problem(random_spec(rng, cfg));
}

ProblemSpec pure_bbob_spec(int fid, int iid, int dim)
{
    const bbob::Instance inst = bbob::make_instance(fid, iid, dim);
    ProblemSpec spec;
    spec.dim = dim;
    spec.weights = one_hot(fid).values();
    spec.iids.fill(iid);
    spec.x_opt = inst.x_opt();
    spec.scale_factors = calibration::table_defaults().values;
    spec.seed = bbob::instance_seed(fid, iid);
    return spec;
}

ProblemSpec restrict_dimension(const ProblemSpec& spec, int dim)
{
    if (dim < 2 || dim > spec.dim) {
        throw ParameterError("dim", "must be in 2.." + std::to_string(spec.dim));
    }
    ProblemSpec out = spec;
    out.dim = dim;
    out.x_opt.resize(static_cast<std::size_t>(dim));
    return out;
}

} // namespace mabbob
