#include "mabbob/metrics.hpp"

#include "mabbob/errors.hpp"
#include "mabbob/rng.hpp"
#include "mabbob/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace mabbob::metrics {

TargetSet targets()
{
    TargetSet t;
    for (int k = 0; k < kNumTargets; ++k) {
        t.values[static_cast<std::size_t>(k)] = std::pow(10.0, static_cast<double>(10 - k) / 5.0);
    }
    return t;
}

double auc(std::span<const harness::RunLog> logs, const TargetSet& t)
{
    if (logs.empty()) {
        throw ParameterError("logs", "need at least one run");
    }
    const int budget = logs.front().budget;
    if (budget < 1) {
        throw ParameterError("budget", "must be >= 1");
    }
    std::int64_t hits = 0;
    for (const harness::RunLog& log : logs) {
        if (log.budget != budget) {
            throw ParameterError("logs", "runs do not share one budget");
        }
        for (double target : t.values) {
            const auto it = std::find_if(log.events.begin(), log.events.end(),
                                         [target](const harness::Event& e) { return e.best_precision <= target; });
            if (it != log.events.end() && it->eval_index <= budget) {
                hits += budget - it->eval_index + 1;
            }
        }
    }
    const double cells = static_cast<double>(logs.size()) * kNumTargets * budget;
    return static_cast<double>(hits) / cells;
}

AucTable auc_table(std::span<const harness::RunLog> logs, const TargetSet& t)
{
    std::vector<std::string> alg_order;
    std::map<std::pair<int, std::size_t>, std::vector<harness::RunLog>> groups;
    for (const harness::RunLog& log : logs) {
        auto pos = std::find(alg_order.begin(), alg_order.end(), log.algorithm);
        if (pos == alg_order.end()) {
            alg_order.push_back(log.algorithm);
            pos = alg_order.end() - 1;
        }
        groups[{log.problem_id, static_cast<std::size_t>(pos - alg_order.begin())}].push_back(log);
    }
    AucTable table;
    for (const auto& [key, group] : groups) {
        table.push_back({key.first, alg_order[key.second], auc(group, t)});
    }
    return table;
}

namespace {

struct Grid {
    std::vector<int> problems;
    std::vector<std::string> algorithms;
    std::map<std::pair<int, std::string>, double> cells;
};

Grid complete_grid(const AucTable& table)
{
    Grid g;
    std::set<int> seen;
    for (const AucRow& row : table) {
        if (seen.insert(row.problem_id).second) {
            g.problems.push_back(row.problem_id);
        }
        if (std::find(g.algorithms.begin(), g.algorithms.end(), row.algorithm) == g.algorithms.end()) {
            g.algorithms.push_back(row.algorithm);
        }
        g.cells[{row.problem_id, row.algorithm}] = row.auc;
    }
    for (int p : g.problems) {
        for (const std::string& a : g.algorithms) {
            if (!g.cells.count({p, a})) {
                throw ParameterError("table", "missing AUC for (problem " + std::to_string(p) + ", " + a + ")");
            }
        }
    }
    return g;
}

} // namespace

std::vector<RankRow> rank_algorithms(const AucTable& table)
{
    const Grid g = complete_grid(table);
    std::vector<RankRow> out;
    for (int p : g.problems) {
        std::vector<double> values;
        for (const std::string& a : g.algorithms) {
            values.push_back(g.cells.at({p, a}));
        }
        const auto ranks = stats::average_ranks(values, true);
        for (std::size_t i = 0; i < g.algorithms.size(); ++i) {
            out.push_back({p, g.algorithms[i], ranks[i]});
        }
    }
    return out;
}

std::map<std::string, std::vector<double>> rank_histogram(std::span<const RankRow> ranks)
{
    std::map<int, std::vector<const RankRow*>> by_problem;
    for (const RankRow& r : ranks) {
        by_problem[r.problem_id].push_back(&r);
    }
    std::map<std::string, std::vector<double>> hist;
    for (const auto& [pid, rows] : by_problem) {
        const std::size_t k = rows.size();
        for (const RankRow* r : rows) {
            auto& counts = hist[r->algorithm];
            counts.resize(std::max(counts.size(), k), 0.0);
            // A shared rank (r + s) / 2 covers positions r..s; count how many
            // rows share it to recover the span.
            const auto tied = static_cast<double>(
                std::count_if(rows.begin(), rows.end(), [&](const RankRow* o) { return o->rank == r->rank; }));
            const double first = r->rank - (tied - 1.0) / 2.0;
            for (int pos = 0; pos < static_cast<int>(tied); ++pos) {
                counts[static_cast<std::size_t>(std::lround(first) - 1 + pos)] += 1.0 / tied;
            }
        }
    }
    return hist;
}

std::map<int, std::string> best_algorithm(const AucTable& table)
{
    const Grid g = complete_grid(table);
    std::map<int, std::string> best;
    for (int p : g.problems) {
        double top = -std::numeric_limits<double>::infinity();
        for (const std::string& a : g.algorithms) {
            const double v = g.cells.at({p, a});
            if (v > top) {
                top = v;
                best[p] = a;
            }
        }
    }
    return best;
}

std::string knn_select(std::span<const LabeledPoint> train, std::span<const double> query)
{
    if (train.empty()) {
        throw ParameterError("train", "empty training set");
    }
    const LabeledPoint* nearest = nullptr;
    double best = std::numeric_limits<double>::infinity();
    for (const LabeledPoint& row : train) {
        if (row.features.size() != query.size()) {
            throw ParameterError("query", "dimension " + std::to_string(query.size()) +
                                              " does not match training dimension " +
                                              std::to_string(row.features.size()));
        }
        double d2 = 0.0;
        for (std::size_t i = 0; i < query.size(); ++i) {
            const double d = row.features[i] - query[i];
            d2 += d * d;
        }
        if (d2 < best || (d2 == best && nearest && row.problem_id < nearest->problem_id)) {
            best = d2;
            nearest = &row;
        }
    }
    return nearest->label;
}

double weighted_f1(std::span<const std::string> pred, std::span<const std::string> truth)
{
    if (pred.empty() || pred.size() != truth.size()) {
        throw ParameterError("pred", "need equal-length, non-empty label lists");
    }
    std::map<std::string, std::array<double, 3>> counts; // tp, fp, fn
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] == truth[i]) {
            counts[pred[i]][0] += 1.0;
        } else {
            counts[pred[i]][1] += 1.0;
            counts[truth[i]][2] += 1.0;
        }
    }
    double score = 0.0;
    for (const auto& [label, c] : counts) {
        const double support = c[0] + c[2];
        if (support == 0.0) {
            continue;
        }
        const double denom = 2.0 * c[0] + c[1] + c[2];
        const double f1 = denom > 0.0 ? 2.0 * c[0] / denom : 0.0;
        score += support * f1;
    }
    return score / static_cast<double>(truth.size());
}

std::vector<double> auc_loss(std::span<const std::pair<int, std::string>> selected, const AucTable& table)
{
    const Grid g = complete_grid(table);
    std::vector<double> losses;
    for (const auto& [p, alg] : selected) {
        if (!g.cells.count({p, alg})) {
            throw ParameterError("selected", "missing AUC for (problem " + std::to_string(p) + ", " + alg + ")");
        }
        double top = -std::numeric_limits<double>::infinity();
        for (const std::string& a : g.algorithms) {
            top = std::max(top, g.cells.at({p, a}));
        }
        losses.push_back(top - g.cells.at({p, alg}));
    }
    return losses;
}

std::vector<SelectorScore> selector_baseline(const AucTable& table,
                                             const std::map<std::string, std::map<int, std::vector<double>>>& reps,
                                             int folds, std::uint64_t seed)
{
    if (folds < 2) {
        throw ParameterError("folds", "must be >= 2");
    }
    const std::map<int, std::string> best = best_algorithm(table);
    std::vector<int> ids;
    for (const auto& [p, a] : best) {
        ids.push_back(p);
    }
    // Seeded Fisher-Yates; fold of ids[i] is i % folds.
    Rng rng(seed);
    for (std::size_t i = ids.size(); i > 1; --i) {
        std::swap(ids[i - 1], ids[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
    }

    auto score = [&](const std::string& name, const std::vector<std::pair<int, std::string>>& selected) {
        SelectorScore s;
        s.representation = name;
        s.selected = selected;
        std::vector<std::string> pred;
        std::vector<std::string> truth;
        for (const auto& [p, a] : selected) {
            pred.push_back(a);
            truth.push_back(best.at(p));
        }
        s.weighted_f1 = weighted_f1(pred, truth);
        s.losses = auc_loss(selected, table);
        s.mean_loss = stats::mean(s.losses);
        return s;
    };

    std::vector<SelectorScore> out;
    for (const auto& [name, vectors] : reps) {
        for (int p : ids) {
            if (!vectors.count(p)) {
                throw ParameterError(name, "no representation for problem " + std::to_string(p));
            }
        }
        std::vector<std::pair<int, std::string>> selected;
        for (int fold = 0; fold < folds; ++fold) {
            std::vector<int> train_ids;
            std::vector<int> test_ids;
            for (std::size_t i = 0; i < ids.size(); ++i) {
                (static_cast<int>(i % static_cast<std::size_t>(folds)) == fold ? test_ids : train_ids).push_back(ids[i]);
            }
            if (test_ids.empty() || train_ids.empty()) {
                continue;
            }
            const std::size_t dim = vectors.at(train_ids.front()).size();
            std::vector<double> mu(dim, 0.0);
            std::vector<double> sd(dim, 0.0);
            for (int p : train_ids) {
                for (std::size_t j = 0; j < dim; ++j) {
                    mu[j] += vectors.at(p)[j] / static_cast<double>(train_ids.size());
                }
            }
            for (int p : train_ids) {
                for (std::size_t j = 0; j < dim; ++j) {
                    const double d = vectors.at(p)[j] - mu[j];
                    sd[j] += d * d / static_cast<double>(train_ids.size());
                }
            }
            for (double& v : sd) {
                v = v > 0.0 ? std::sqrt(v) : 1.0;
            }
            auto standardize = [&](const std::vector<double>& v) {
                std::vector<double> z(v.size());
                for (std::size_t j = 0; j < v.size(); ++j) {
                    z[j] = (v[j] - mu[j]) / sd[j];
                }
                return z;
            };
            std::vector<LabeledPoint> train;
            for (int p : train_ids) {
                train.push_back({p, standardize(vectors.at(p)), best.at(p)});
            }
            for (int p : test_ids) {
                selected.emplace_back(p, knn_select(train, standardize(vectors.at(p))));
            }
        }
        std::sort(selected.begin(), selected.end());
        out.push_back(score(name, selected));
    }

    std::vector<std::pair<int, std::string>> oracle(best.begin(), best.end());
    out.push_back(score("oracle", oracle));
    return out;
}

} // namespace mabbob::metrics
