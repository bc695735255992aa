#include "mabbob/ela.hpp"

#include "mabbob/errors.hpp"
#include "mabbob/rng.hpp"
#include "mabbob/stats.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mabbob::ela {

namespace {

enum Feature : std::size_t {
    kLinR2,
    kLinIntercept,
    kQuadR2,
    kQuadCond,
    kSkewness,
    kKurtosis,
    kNbMeanRatio,
    kNbCor,
    kDispRatio05,
    kIcHmax,
    kIcEpsS,
};

constexpr double kSettlingThreshold = 0.05;
constexpr int kEpsilonGridSize = 1000;

struct Fit {
    Eigen::VectorXd coef;
    double r2;
};

Fit least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& y)
{
    Fit fit;
    fit.coef = design.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd resid = y - design * fit.coef;
    const double ss_res = resid.squaredNorm();
    const double ss_tot = (y.array() - y.mean()).matrix().squaredNorm();
    fit.r2 = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
    return fit;
}

void meta_features(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, FeatureVector& out)
{
    const Eigen::Index n = x.rows();
    const Eigen::Index d = x.cols();

    Eigen::MatrixXd lin(n, d + 1);
    lin.col(0).setOnes();
    lin.rightCols(d) = x;
    const Fit lf = least_squares(lin, y);
    out.values[kLinR2] = lf.r2;
    out.values[kLinIntercept] = std::abs(lf.coef(0));

    Eigen::MatrixXd quad(n, 2 * d + 1);
    quad.leftCols(d + 1) = lin;
    quad.rightCols(d) = x.array().square().matrix();
    const Fit qf = least_squares(quad, y);
    out.values[kQuadR2] = qf.r2;
    const Eigen::VectorXd sq = qf.coef.tail(d).cwiseAbs();
    if (sq.minCoeff() > 0.0) {
        out.values[kQuadCond] = sq.maxCoeff() / sq.minCoeff();
    }
}

void distribution_features(std::span<const double> y, FeatureVector& out)
{
    const double mu = stats::mean(y);
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double v : y) {
        const double c = v - mu;
        const double c2 = c * c;
        m2 += c2;
        m3 += c2 * c;
        m4 += c2 * c2;
    }
    const auto n = static_cast<double>(y.size());
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 > 0.0) {
        out.values[kSkewness] = m3 / std::pow(m2, 1.5);
        out.values[kKurtosis] = m4 / (m2 * m2);
    }
}

// Strict lexicographic order on points; breaks exact distance ties so the
// result does not depend on input order.
bool lex_less(const Eigen::MatrixXd& x, Eigen::Index a, Eigen::Index b)
{
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        if (x(a, j) != x(b, j)) {
            return x(a, j) < x(b, j);
        }
    }
    return false;
}

double sq_dist(const Eigen::MatrixXd& xt, Eigen::Index a, Eigen::Index b)
{
    return (xt.col(a) - xt.col(b)).squaredNorm();
}

void nearest_better_features(const Eigen::MatrixXd& xt, std::span<const double> y, FeatureVector& out)
{
    const auto n = static_cast<Eigen::Index>(y.size());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> nn(static_cast<std::size_t>(n), inf);
    std::vector<double> nb(static_cast<std::size_t>(n), inf);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d2 = sq_dist(xt, i, j);
            nn[i] = std::min(nn[i], d2);
            nn[j] = std::min(nn[j], d2);
            if (y[j] < y[i]) {
                nb[i] = std::min(nb[i], d2);
            } else if (y[i] < y[j]) {
                nb[j] = std::min(nb[j], d2);
            }
        }
    }
    std::vector<double> nn_kept;
    std::vector<double> nb_kept;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (nb[i] < inf) {
            nn_kept.push_back(std::sqrt(nn[i]));
            nb_kept.push_back(std::sqrt(nb[i]));
        }
    }
    if (nb_kept.size() < 2) {
        return;
    }
    out.values[kNbMeanRatio] = stats::mean(nn_kept) / stats::mean(nb_kept);
    out.values[kNbCor] = stats::pearson(nn_kept, nb_kept);
}

double mean_pairwise_distance(const Eigen::MatrixXd& xt, std::span<const Eigen::Index> idx)
{
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            total += std::sqrt(sq_dist(xt, idx[a], idx[b]));
            ++pairs;
        }
    }
    return total / static_cast<double>(pairs);
}

void dispersion_features(const Eigen::MatrixXd& x, const Eigen::MatrixXd& xt, std::span<const double> y,
                         FeatureVector& out)
{
    const auto n = static_cast<Eigen::Index>(y.size());
    std::vector<Eigen::Index> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    std::vector<Eigen::Index> best = all;
    std::sort(best.begin(), best.end(), [&](Eigen::Index a, Eigen::Index b) {
        return y[a] != y[b] ? y[a] < y[b] : lex_less(x, a, b);
    });
    const auto keep = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(n))));
    best.resize(std::min(best.size(), keep));
    const double all_mean = mean_pairwise_distance(xt, all);
    if (all_mean > 0.0) {
        out.values[kDispRatio05] = mean_pairwise_distance(xt, best) / all_mean;
    }
}

// Greedy nearest-neighbour tour starting from the lexicographically smallest
// point.
std::vector<Eigen::Index> nearest_neighbour_tour(const Eigen::MatrixXd& x, const Eigen::MatrixXd& xt)
{
    const Eigen::Index n = x.rows();
    Eigen::Index current = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
        if (lex_less(x, i, current)) {
            current = i;
        }
    }
    std::vector<bool> visited(static_cast<std::size_t>(n), false);
    std::vector<Eigen::Index> tour;
    tour.reserve(static_cast<std::size_t>(n));
    tour.push_back(current);
    visited[current] = true;
    for (Eigen::Index step = 1; step < n; ++step) {
        Eigen::Index next = -1;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < n; ++j) {
            if (visited[j]) {
                continue;
            }
            const double d2 = sq_dist(xt, current, j);
            if (d2 < best || (d2 == best && lex_less(x, j, next))) {
                best = d2;
                next = j;
            }
        }
        visited[next] = true;
        tour.push_back(next);
        current = next;
    }
    return tour;
}

double information_content(std::span<const double> slopes, double eps)
{
    auto symbol = [eps](double s) { return s < -eps ? 0 : (s > eps ? 2 : 1); };
    std::array<int, 9> counts{};
    for (std::size_t k = 0; k + 1 < slopes.size(); ++k) {
        ++counts[static_cast<std::size_t>(3 * symbol(slopes[k]) + symbol(slopes[k + 1]))];
    }
    const auto pairs = static_cast<double>(slopes.size() - 1);
    double h = 0.0;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            const int c = counts[static_cast<std::size_t>(3 * a + b)];
            if (a != b && c > 0) {
                const double p = c / pairs;
                h -= p * std::log(p) / std::log(6.0);
            }
        }
    }
    return h;
}

void information_content_features(const Eigen::MatrixXd& x, const Eigen::MatrixXd& xt, std::span<const double> y,
                                  FeatureVector& out)
{
    if (y.size() < 3) {
        return;
    }
    const auto tour = nearest_neighbour_tour(x, xt);
    std::vector<double> slopes(tour.size() - 1);
    for (std::size_t k = 0; k + 1 < tour.size(); ++k) {
        const double dist = std::sqrt(sq_dist(xt, tour[k], tour[k + 1]));
        slopes[k] = (y[tour[k + 1]] - y[tour[k]]) / dist;
    }

    double h_max = information_content(slopes, 0.0);
    std::optional<double> eps_s;
    for (int i = 0; i < kEpsilonGridSize; ++i) {
        const double log_eps = -5.0 + 20.0 * i / (kEpsilonGridSize - 1.0);
        const double h = information_content(slopes, std::pow(10.0, log_eps));
        h_max = std::max(h_max, h);
        if (!eps_s && h < kSettlingThreshold) {
            eps_s = log_eps;
        }
    }
    out.values[kIcHmax] = h_max;
    out.values[kIcEpsS] = eps_s;
}

} // namespace

std::optional<double> FeatureVector::operator[](std::string_view name) const
{
    for (std::size_t i = 0; i < kFeatureNames.size(); ++i) {
        if (kFeatureNames[i] == name) {
            return values[i];
        }
    }
    throw ParameterError("name", "unknown feature '" + std::string(name) + "'");
}

Normalized minmax_normalize(std::span<const double> y)
{
    if (y.empty()) {
        throw ParameterError("y", "empty input");
    }
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    Normalized out{std::vector<double>(y.size(), 0.0), *lo == *hi};
    if (!out.constant) {
        const double range = *hi - *lo;
        std::transform(y.begin(), y.end(), out.values.begin(), [&](double v) { return (v - *lo) / range; });
    }
    return out;
}

FeatureVector compute_features(const Eigen::MatrixXd& x, std::span<const double> y)
{
    if (static_cast<Eigen::Index>(y.size()) != x.rows()) {
        throw ParameterError("y", "one value per sample point required");
    }
    if (x.rows() < x.cols() * 2 + 2) {
        throw ParameterError("x", "too few points for the quadratic meta-model");
    }
    FeatureVector out;
    const Normalized norm = minmax_normalize(y);
    if (norm.constant) {
        out.constant_input = true;
        return out;
    }
    const std::vector<double>& yn = norm.values;
    const Eigen::Map<const Eigen::VectorXd> yv(yn.data(), static_cast<Eigen::Index>(yn.size()));
    const Eigen::MatrixXd xt = x.transpose();

    meta_features(x, yv, out);
    distribution_features(yn, out);
    nearest_better_features(xt, yn, out);
    dispersion_features(x, xt, yn, out);
    information_content_features(x, xt, yn, out);
    for (auto& v : out.values) {
        if (v && !std::isfinite(*v)) {
            v.reset();
        }
    }
    return out;
}

FeatureVector compute_features(const MAProblem& problem, const sampling::SampleDesign& design)
{
    if (design.dim != problem.dim()) {
        throw ParameterError("design", "dimension " + std::to_string(design.dim) + " does not match problem dimension " +
                                           std::to_string(problem.dim()));
    }
    const Eigen::MatrixXd x = sampling::scale_to_box(design, -5.0, 5.0);
    std::vector<double> y(static_cast<std::size_t>(x.rows()));
    std::vector<double> point(static_cast<std::size_t>(x.cols()));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            point[static_cast<std::size_t>(j)] = x(i, j);
        }
        y[static_cast<std::size_t>(i)] = problem(point);
    }
    return compute_features(x, y);
}

sampling::SampleDesign feature_design(const FeatureConfig& cfg, int dim, int k)
{
    return sampling::sobol(dim, cfg.points_per_dim * dim, derive_seed(cfg.seed, static_cast<std::uint64_t>(k)), true);
}

FeatureTable feature_table(std::span<const MAProblem> problems, const FeatureConfig& cfg, bool drop_undefined)
{
    if (cfg.n_designs < 1) {
        throw ParameterError("n_designs", "must be >= 1");
    }
    FeatureTable table;
    table.columns.assign(kFeatureNames.begin(), kFeatureNames.end());
    if (problems.empty()) {
        return table;
    }
    const int dim = problems.front().dim();
    for (const MAProblem& p : problems) {
        if (p.dim() != dim) {
            throw ParameterError("problems", "all problems must share one dimension");
        }
    }
    std::vector<sampling::SampleDesign> designs;
    for (int k = 0; k < cfg.n_designs; ++k) {
        designs.push_back(feature_design(cfg, dim, k));
    }

    for (const MAProblem& p : problems) {
        std::vector<std::optional<double>> row(kNumFeatures, 0.0);
        for (const auto& design : designs) {
            const FeatureVector fv = compute_features(p, design);
            for (std::size_t f = 0; f < kNumFeatures; ++f) {
                if (row[f] && fv.values[f]) {
                    *row[f] += *fv.values[f];
                } else {
                    row[f].reset();
                }
            }
        }
        for (auto& v : row) {
            if (v) {
                *v /= cfg.n_designs;
            }
        }
        table.rows.push_back(std::move(row));
    }

    if (drop_undefined) {
        std::vector<bool> keep(kNumFeatures, true);
        for (const auto& row : table.rows) {
            for (std::size_t f = 0; f < kNumFeatures; ++f) {
                keep[f] = keep[f] && row[f].has_value();
            }
        }
        FeatureTable kept;
        for (std::size_t f = 0; f < kNumFeatures; ++f) {
            if (keep[f]) {
                kept.columns.push_back(table.columns[f]);
            }
        }
        for (const auto& row : table.rows) {
            std::vector<std::optional<double>> r;
            for (std::size_t f = 0; f < kNumFeatures; ++f) {
                if (keep[f]) {
                    r.push_back(row[f]);
                }
            }
            kept.rows.push_back(std::move(r));
        }
        return kept;
    }
    return table;
}

} // namespace mabbob::ela
