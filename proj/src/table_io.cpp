#include "mabbob/errors.hpp"
#include "mabbob/io.hpp"

#include <charconv>
#include <limits>
#include <map>

namespace mabbob::io {

namespace {

struct CsvRow {
    std::size_t line;
    std::vector<std::string_view> fields;
};

std::vector<CsvRow> split_csv(std::string_view text)
{
    std::vector<CsvRow> rows;
    std::size_t line = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view raw = text.substr(start, end - start);
        ++line;
        if (!raw.empty() && raw.back() == '\r') {
            raw.remove_suffix(1);
        }
        if (!raw.empty()) {
            CsvRow row{line, {}};
            std::size_t f = 0;
            for (;;) {
                const std::size_t comma = raw.find(',', f);
                row.fields.push_back(raw.substr(f, comma == std::string_view::npos ? std::string_view::npos : comma - f));
                if (comma == std::string_view::npos) {
                    break;
                }
                f = comma + 1;
            }
            rows.push_back(std::move(row));
        }
        start = end + 1;
    }
    return rows;
}

void expect_header(const std::vector<CsvRow>& rows, std::span<const std::string_view> header, const std::string& source)
{
    if (rows.empty()) {
        throw ParseError(source, 1, "", "empty file");
    }
    const CsvRow& h = rows.front();
    if (h.fields.size() < header.size()) {
        throw ParseError(source, h.line, "", "header has too few columns");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (h.fields[i] != header[i]) {
            throw ParseError(source, h.line, std::string(header[i]),
                             "expected column '" + std::string(header[i]) + "', got '" + std::string(h.fields[i]) + "'");
        }
    }
}

template <typename T>
T parse_number(const CsvRow& row, std::size_t col, std::string_view name, const std::string& source)
{
    if (col >= row.fields.size()) {
        throw ParseError(source, row.line, std::string(name), "missing field");
    }
    const std::string_view f = row.fields[col];
    T value{};
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
    if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw ParseError(source, row.line, std::string(name), "cannot parse '" + std::string(f) + "'");
    }
    return value;
}

void check_width(const CsvRow& row, std::size_t width, const std::string& source)
{
    if (row.fields.size() != width) {
        throw ParseError(source, row.line, "", "expected " + std::to_string(width) + " fields, got " +
                                                   std::to_string(row.fields.size()));
    }
}

} // namespace

std::string runlogs_to_csv(std::span<const harness::RunLog> logs)
{
    std::string out = "problem_id,algorithm,run,eval_index,best_precision\n";
    for (const harness::RunLog& log : logs) {
        const std::string prefix =
            std::to_string(log.problem_id) + "," + log.algorithm + "," + std::to_string(log.run_index) + ",";
        for (const harness::Event& e : log.events) {
            out += prefix + std::to_string(e.eval_index) + "," + format_double(e.best_precision) + "\n";
        }
        const double last = log.events.empty() ? std::numeric_limits<double>::infinity() : log.events.back().best_precision;
        out += prefix + std::to_string(log.budget) + "," + format_double(last) + "\n";
    }
    return out;
}

std::vector<harness::RunLog> parse_runlogs(std::string_view text, const std::string& source)
{
    static constexpr std::string_view kHeader[] = {"problem_id", "algorithm", "run", "eval_index", "best_precision"};
    const auto rows = split_csv(text);
    expect_header(rows, kHeader, source);

    std::vector<harness::RunLog> logs;
    std::vector<const CsvRow*> group;
    auto flush = [&] {
        if (group.empty()) {
            return;
        }
        harness::RunLog log;
        const CsvRow& first = *group.front();
        log.problem_id = parse_number<int>(first, 0, "problem_id", source);
        log.algorithm = std::string(first.fields[1]);
        log.run_index = parse_number<int>(first, 2, "run", source);
        const CsvRow& last = *group.back();
        log.budget = parse_number<int>(last, 3, "eval_index", source);
        for (std::size_t i = 0; i + 1 < group.size(); ++i) {
            const CsvRow& r = *group[i];
            harness::Event e{parse_number<int>(r, 3, "eval_index", source),
                             parse_number<double>(r, 4, "best_precision", source)};
            if (!log.events.empty() &&
                (e.eval_index <= log.events.back().eval_index || e.best_precision >= log.events.back().best_precision)) {
                throw ParseError(source, r.line, "eval_index", "events must improve strictly");
            }
            if (e.eval_index > log.budget || e.eval_index < 1) {
                throw ParseError(source, r.line, "eval_index", "event outside 1..budget");
            }
            log.events.push_back(e);
        }
        log.evaluations = log.events.empty() ? 0 : log.events.back().eval_index;
        logs.push_back(std::move(log));
        group.clear();
    };
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const CsvRow& r = rows[i];
        check_width(r, 5, source);
        if (!group.empty()) {
            const CsvRow& g = *group.front();
            if (g.fields[0] != r.fields[0] || g.fields[1] != r.fields[1] || g.fields[2] != r.fields[2]) {
                flush();
            }
        }
        group.push_back(&r);
    }
    flush();
    return logs;
}

std::string auc_table_to_csv(const metrics::AucTable& table)
{
    std::string out = "problem,algorithm,auc\n";
    for (const metrics::AucRow& r : table) {
        out += std::to_string(r.problem_id) + "," + r.algorithm + "," + format_double(r.auc) + "\n";
    }
    return out;
}

metrics::AucTable parse_auc_table(std::string_view text, const std::string& source)
{
    static constexpr std::string_view kHeader[] = {"problem", "algorithm", "auc"};
    const auto rows = split_csv(text);
    expect_header(rows, kHeader, source);
    metrics::AucTable table;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        check_width(rows[i], 3, source);
        table.push_back({parse_number<int>(rows[i], 0, "problem", source), std::string(rows[i].fields[1]),
                         parse_number<double>(rows[i], 2, "auc", source)});
    }
    return table;
}

std::string ranks_to_csv(std::span<const metrics::RankRow> ranks)
{
    std::string out = "problem,algorithm,rank\n";
    for (const metrics::RankRow& r : ranks) {
        out += std::to_string(r.problem_id) + "," + r.algorithm + "," + format_double(r.rank) + "\n";
    }
    return out;
}

std::string rank_histogram_to_csv(const std::map<std::string, std::vector<double>>& hist)
{
    std::size_t width = 0;
    for (const auto& [alg, counts] : hist) {
        width = std::max(width, counts.size());
    }
    std::string out = "algorithm";
    for (std::size_t k = 1; k <= width; ++k) {
        out += ",rank_" + std::to_string(k);
    }
    out += "\n";
    for (const auto& [alg, counts] : hist) {
        out += alg;
        for (std::size_t k = 0; k < width; ++k) {
            out += "," + format_double(k < counts.size() ? counts[k] : 0.0);
        }
        out += "\n";
    }
    return out;
}

std::string selector_report_to_csv(std::span<const metrics::SelectorScore> scores)
{
    std::string out = "representation,weighted_f1,mean_loss\n";
    for (const auto& s : scores) {
        out += s.representation + "," + format_double(s.weighted_f1) + "," + format_double(s.mean_loss) + "\n";
    }
    return out;
}

std::string selector_losses_to_csv(std::span<const metrics::SelectorScore> scores)
{
    std::string out = "representation,problem,selected,loss\n";
    for (const auto& s : scores) {
        for (std::size_t i = 0; i < s.selected.size(); ++i) {
            out += s.representation + "," + std::to_string(s.selected[i].first) + "," + s.selected[i].second + "," +
                   format_double(s.losses[i]) + "\n";
        }
    }
    return out;
}

std::string features_to_csv(std::span<const int> problem_ids, int dim, const ela::FeatureTable& table)
{
    if (problem_ids.size() != table.rows.size()) {
        throw ParameterError("problem_ids", "one id per feature row required");
    }
    std::string out = "problem_id,dim";
    for (const std::string& c : table.columns) {
        out += "," + c;
    }
    out += "\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        out += std::to_string(problem_ids[i]) + "," + std::to_string(dim);
        for (const auto& v : table.rows[i]) {
            out += ",";
            if (v) {
                out += format_double(*v);
            }
        }
        out += "\n";
    }
    return out;
}

FeatureCsv parse_features(std::string_view text, const std::string& source)
{
    static constexpr std::string_view kHeader[] = {"problem_id", "dim"};
    const auto rows = split_csv(text);
    expect_header(rows, kHeader, source);
    FeatureCsv out;
    const std::size_t width = rows.front().fields.size();
    for (std::size_t c = 2; c < width; ++c) {
        out.table.columns.emplace_back(rows.front().fields[c]);
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const CsvRow& r = rows[i];
        check_width(r, width, source);
        out.problem_ids.push_back(parse_number<int>(r, 0, "problem_id", source));
        out.dims.push_back(parse_number<int>(r, 1, "dim", source));
        std::vector<std::optional<double>> values;
        for (std::size_t c = 2; c < width; ++c) {
            if (r.fields[c].empty()) {
                values.emplace_back();
            } else {
                values.emplace_back(parse_number<double>(r, c, out.table.columns[c - 2], source));
            }
        }
        out.table.rows.push_back(std::move(values));
    }
    return out;
}

std::string factors_to_csv(std::span<const calibration::FactorRow> rows)
{
    std::string out = "fid,dim,n,aggregation,factor\n";
    for (const auto& r : rows) {
        out += std::to_string(r.fid) + "," + std::to_string(r.dim) + "," + std::to_string(r.n) + "," +
               std::string(calibration::to_string(r.aggregation)) + "," + format_double(r.factor) + "\n";
    }
    return out;
}

std::string design_to_csv(const Eigen::MatrixXd& points)
{
    std::string out = "index";
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
        out += ",x" + std::to_string(j + 1);
    }
    out += "\n";
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        out += std::to_string(i);
        for (Eigen::Index j = 0; j < points.cols(); ++j) {
            out += "," + format_double(points(i, j));
        }
        out += "\n";
    }
    return out;
}

} // namespace mabbob::io
