#include "algorithms.hpp"

#include "mabbob/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mabbob::harness::detail {

double Tracker::operator()(std::span<const double> x)
{
    if (solved_ || log_.evaluations >= budget_) {
        throw Stop{};
    }
    const double value = f_(x);
    ++log_.evaluations;
    if (!std::isfinite(value)) {
        throw EvaluationError("objective returned a non-finite value at evaluation " +
                              std::to_string(log_.evaluations));
    }
    const double precision = std::max(value - optimum_, kPrecisionLogFloor);
    if (log_.events.empty() || precision < log_.events.back().best_precision) {
        log_.events.push_back({log_.evaluations, precision});
    }
    solved_ = precision <= kPrecisionLogFloor;
    return value;
}

void clamp_to_box(std::span<double> x) noexcept
{
    for (double& v : x) {
        v = std::clamp(v, kLower, kUpper);
    }
}

std::vector<double> uniform_point(Rng& rng, int dim)
{
    std::vector<double> x(static_cast<std::size_t>(dim));
    for (double& v : x) {
        v = rng.uniform(kLower, kUpper);
    }
    return x;
}

void random_search(Tracker& t, Rng& rng, const AlgorithmSpec&)
{
    for (;;) {
        t(uniform_point(rng, t.dim()));
    }
}

void one_plus_one_es(Tracker& t, Rng& rng, const AlgorithmSpec& spec)
{
    const int n = t.dim();
    const double sigma0 = spec.param("sigma0");
    const double restart_sigma = spec.param("restart_sigma");
    // Damped 1/5th rule: log(sigma) moves by +0.8/d on success and -0.2/d on
    // failure, which is stationary at a success rate of 1/5.
    const double damping = std::sqrt(n + 1.0);
    const double up = std::exp(0.8 / damping);
    const double down = std::exp(-0.2 / damping);

    for (;;) {
        std::vector<double> parent = uniform_point(rng, n);
        double f_parent = t(parent);
        double sigma = sigma0;
        std::vector<double> child(static_cast<std::size_t>(n));
        while (sigma >= restart_sigma) {
            for (int i = 0; i < n; ++i) {
                child[i] = parent[i] + sigma * rng.normal();
            }
            clamp_to_box(child);
            const double f_child = t(child);
            if (f_child <= f_parent) {
                parent.swap(child);
                f_parent = f_child;
                sigma *= up;
            } else {
                sigma *= down;
            }
            sigma = std::min(sigma, kUpper - kLower);
        }
    }
}

void nelder_mead_restart(Tracker& t, Rng& rng, const AlgorithmSpec& spec)
{
    const int n = t.dim();
    const double step = spec.param("initial_step");
    const double min_diameter = spec.param("restart_diameter");
    constexpr double kReflect = 1.0;
    constexpr double kExpand = 2.0;
    constexpr double kContract = 0.5;
    constexpr double kShrink = 0.5;

    using Point = std::vector<double>;
    auto combine = [n](const Point& a, const Point& b, double coef) {
        // a + coef * (a - b), clamped
        Point out(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            out[i] = a[i] + coef * (a[i] - b[i]);
        }
        clamp_to_box(out);
        return out;
    };

    for (;;) {
        std::vector<Point> simplex;
        std::vector<double> fval;
        simplex.push_back(uniform_point(rng, n));
        for (int i = 0; i < n; ++i) {
            Point v = simplex.front();
            v[i] += v[i] + step <= kUpper ? step : -step;
            simplex.push_back(std::move(v));
        }
        for (const Point& v : simplex) {
            fval.push_back(t(v));
        }

        std::vector<int> order(static_cast<std::size_t>(n + 1));
        for (;;) {
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fval[a] < fval[b]; });
            const int best = order.front();
            const int worst = order.back();
            const int second_worst = order[static_cast<std::size_t>(n - 1)];

            double diameter = 0.0;
            for (int k = 0; k <= n; ++k) {
                double d2 = 0.0;
                for (int i = 0; i < n; ++i) {
                    const double d = simplex[k][i] - simplex[best][i];
                    d2 += d * d;
                }
                diameter = std::max(diameter, std::sqrt(d2));
            }
            if (diameter < min_diameter) {
                break;
            }

            Point centroid(static_cast<std::size_t>(n), 0.0);
            for (int k = 0; k <= n; ++k) {
                if (k == worst) {
                    continue;
                }
                for (int i = 0; i < n; ++i) {
                    centroid[i] += simplex[k][i] / n;
                }
            }

            const Point reflected = combine(centroid, simplex[worst], kReflect);
            const double f_reflected = t(reflected);
            if (f_reflected < fval[best]) {
                const Point expanded = combine(centroid, simplex[worst], kExpand);
                const double f_expanded = t(expanded);
                if (f_expanded < f_reflected) {
                    simplex[worst] = expanded;
                    fval[worst] = f_expanded;
                } else {
                    simplex[worst] = reflected;
                    fval[worst] = f_reflected;
                }
                continue;
            }
            if (f_reflected < fval[second_worst]) {
                simplex[worst] = reflected;
                fval[worst] = f_reflected;
                continue;
            }
            const bool outside = f_reflected < fval[worst];
            const Point contracted = outside ? combine(centroid, simplex[worst], kContract * kReflect)
                                             : combine(centroid, simplex[worst], -kContract);
            const double f_contracted = t(contracted);
            if (f_contracted < (outside ? f_reflected : fval[worst])) {
                simplex[worst] = contracted;
                fval[worst] = f_contracted;
                continue;
            }
            for (int k = 0; k <= n; ++k) {
                if (k == best) {
                    continue;
                }
                for (int i = 0; i < n; ++i) {
                    simplex[k][i] = simplex[best][i] + kShrink * (simplex[k][i] - simplex[best][i]);
                }
                fval[k] = t(simplex[k]);
            }
        }
    }
}

void de_rand_1_bin(Tracker& t, Rng& rng, const AlgorithmSpec& spec)
{
    const int n = t.dim();
    const int np = std::max(4, static_cast<int>(std::lround(spec.param("population_factor") * n)));
    const double weight = spec.param("F");
    const double crossover = spec.param("CR");

    std::vector<std::vector<double>> pop;
    std::vector<double> fit;
    for (int i = 0; i < np; ++i) {
        pop.push_back(uniform_point(rng, n));
        fit.push_back(t(pop.back()));
    }
    std::vector<std::vector<double>> next = pop;
    std::vector<double> next_fit = fit;
    std::vector<double> trial(static_cast<std::size_t>(n));
    for (;;) {
        for (int i = 0; i < np; ++i) {
            int r1, r2, r3;
            do {
                r1 = static_cast<int>(rng.uniform_int(0, np - 1));
            } while (r1 == i);
            do {
                r2 = static_cast<int>(rng.uniform_int(0, np - 1));
            } while (r2 == i || r2 == r1);
            do {
                r3 = static_cast<int>(rng.uniform_int(0, np - 1));
            } while (r3 == i || r3 == r1 || r3 == r2);
            const int forced = static_cast<int>(rng.uniform_int(0, n - 1));
            for (int j = 0; j < n; ++j) {
                trial[j] = (j == forced || rng.uniform() < crossover)
                               ? pop[r1][j] + weight * (pop[r2][j] - pop[r3][j])
                               : pop[i][j];
            }
            clamp_to_box(trial);
            const double f_trial = t(trial);
            if (f_trial <= fit[i]) {
                next[i] = trial;
                next_fit[i] = f_trial;
            } else {
                next[i] = pop[i];
                next_fit[i] = fit[i];
            }
        }
        pop.swap(next);
        fit.swap(next_fit);
    }
}

void diag_gaussian_adapt(Tracker& t, Rng& rng, const AlgorithmSpec& spec)
{
    const int n = t.dim();
    const double dn = n;
    const int lambda = 4 + static_cast<int>(std::floor(3.0 * std::log(dn)));
    const int mu = lambda / 2;
    const double sigma0 = spec.param("sigma0");
    const double restart_scale = spec.param("restart_scale");

    std::vector<double> w(static_cast<std::size_t>(mu));
    for (int i = 0; i < mu; ++i) {
        w[i] = std::log(mu + 0.5) - std::log(i + 1.0);
    }
    const double wsum = std::accumulate(w.begin(), w.end(), 0.0);
    double wsq = 0.0;
    for (double& v : w) {
        v /= wsum;
        wsq += v * v;
    }
    const double mueff = 1.0 / wsq;
    const double cs = (mueff + 2.0) / (dn + mueff + 5.0);
    const double ds = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff - 1.0) / (dn + 1.0)) - 1.0) + cs;
    const double cc = (4.0 + mueff / dn) / (dn + 4.0 + 2.0 * mueff / dn);
    // Separable variant: learning rates scaled by (n + 2) / 3.
    const double c1 = std::min(1.0, 2.0 / ((dn + 1.3) * (dn + 1.3) + mueff) * (dn + 2.0) / 3.0);
    const double cmu = std::min(1.0 - c1, 2.0 * (mueff - 2.0 + 1.0 / mueff) / ((dn + 2.0) * (dn + 2.0) + mueff) *
                                               (dn + 2.0) / 3.0);
    const double chi = std::sqrt(dn) * (1.0 - 1.0 / (4.0 * dn) + 1.0 / (21.0 * dn * dn));

    std::vector<std::vector<double>> xs(static_cast<std::size_t>(lambda), std::vector<double>(n));
    std::vector<std::vector<double>> ys(static_cast<std::size_t>(lambda), std::vector<double>(n));
    std::vector<double> fs(static_cast<std::size_t>(lambda));
    std::vector<int> order(static_cast<std::size_t>(lambda));

    for (;;) {
        std::vector<double> mean = uniform_point(rng, n);
        std::vector<double> var(static_cast<std::size_t>(n), 1.0);
        std::vector<double> ps(static_cast<std::size_t>(n), 0.0);
        std::vector<double> pc(static_cast<std::size_t>(n), 0.0);
        double sigma = sigma0;
        double flat_generations = 0;

        for (int gen = 1;; ++gen) {
            for (int k = 0; k < lambda; ++k) {
                for (int i = 0; i < n; ++i) {
                    xs[k][i] = mean[i] + sigma * std::sqrt(var[i]) * rng.normal();
                }
                clamp_to_box(xs[k]);
                for (int i = 0; i < n; ++i) {
                    ys[k][i] = (xs[k][i] - mean[i]) / sigma;
                }
                fs[k] = t(xs[k]);
            }
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });

            std::vector<double> yw(static_cast<std::size_t>(n), 0.0);
            for (int r = 0; r < mu; ++r) {
                for (int i = 0; i < n; ++i) {
                    yw[i] += w[r] * ys[order[r]][i];
                }
            }
            double ps_norm2 = 0.0;
            for (int i = 0; i < n; ++i) {
                mean[i] += sigma * yw[i];
                ps[i] = (1.0 - cs) * ps[i] + std::sqrt(cs * (2.0 - cs) * mueff) * yw[i] / std::sqrt(var[i]);
                ps_norm2 += ps[i] * ps[i];
            }
            const double ps_norm = std::sqrt(ps_norm2);
            const bool hsig = ps_norm / std::sqrt(1.0 - std::pow(1.0 - cs, 2.0 * gen)) < (1.4 + 2.0 / (dn + 1.0)) * chi;
            for (int i = 0; i < n; ++i) {
                pc[i] = (1.0 - cc) * pc[i] + (hsig ? std::sqrt(cc * (2.0 - cc) * mueff) : 0.0) * yw[i];
                double rank_mu = 0.0;
                for (int r = 0; r < mu; ++r) {
                    rank_mu += w[r] * ys[order[r]][i] * ys[order[r]][i];
                }
                var[i] = (1.0 - c1 - cmu) * var[i] + c1 * (pc[i] * pc[i] + (hsig ? 0.0 : cc * (2.0 - cc) * var[i])) +
                         cmu * rank_mu;
            }
            sigma *= std::exp((cs / ds) * (ps_norm / chi - 1.0));

            flat_generations = fs[order.front()] == fs[order.back()] ? flat_generations + 1 : 0;
            const auto [vmin, vmax] = std::minmax_element(var.begin(), var.end());
            const bool collapsed = sigma * std::sqrt(*vmax) < restart_scale;
            const bool ill_conditioned = *vmax > 1e14 * *vmin;
            const bool diverged = !std::isfinite(sigma) || sigma * std::sqrt(*vmin) > 1e3 * (kUpper - kLower);
            if (collapsed || ill_conditioned || diverged || flat_generations > 10 + 30.0 * dn / lambda) {
                break;
            }
        }
    }
}

} // namespace mabbob::harness::detail
