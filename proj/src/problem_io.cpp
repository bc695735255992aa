#include "mabbob/errors.hpp"
#include "mabbob/io.hpp"

#include <fmt/format.h>

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mabbob::io {

namespace {

using nlohmann::json;

template <typename Range>
void append_array(std::string& out, const Range& values)
{
    out += '[';
    bool first = true;
    for (const auto& v : values) {
        if (!first) {
            out += ", ";
        }
        first = false;
        if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>) {
            out += format_double(v);
        } else {
            out += std::to_string(v);
        }
    }
    out += ']';
}

std::size_t line_of_offset(std::string_view text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line on which the k-th top-level array element starts (elements are
// written one per line, but any layout is accepted).
std::vector<std::size_t> element_lines(std::string_view text)
{
    std::vector<std::size_t> lines;
    int depth = 0;
    bool in_string = false;
    std::size_t line = 1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
        }
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == '{' || c == '[') {
            if (depth == 1 && c == '{') {
                lines.push_back(line);
            }
            ++depth;
        } else if (c == '}' || c == ']') {
            --depth;
        }
    }
    return lines;
}

template <std::size_t N, typename T>
std::array<T, N> fixed_array(const json& obj, const char* field, const std::string& source, std::size_t line)
{
    if (!obj.contains(field)) {
        throw ParseError(source, line, field, "missing field");
    }
    const json& arr = obj.at(field);
    if (!arr.is_array() || arr.size() != N) {
        throw ParseError(source, line, field, "expected an array of " + std::to_string(N) + " numbers");
    }
    std::array<T, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        if (!arr[i].is_number()) {
            throw ParseError(source, line, field, "entry " + std::to_string(i) + " is not a number");
        }
        if constexpr (std::is_integral_v<T>) {
            if (!arr[i].is_number_integer()) {
                throw ParseError(source, line, field, "entry " + std::to_string(i) + " is not an integer");
            }
        }
        out[i] = arr[i].get<T>();
    }
    return out;
}

} // namespace

std::string format_double(double v)
{
    return fmt::format("{:.17g}", v);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ParameterError("out", "cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw ParameterError("out", "failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ParameterError("out", "cannot move output into place at " + path.string() + ": " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path.string(), 0, "", "cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string specs_to_json(std::span<const ProblemSpec> specs)
{
    std::string out = "[\n";
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const ProblemSpec& s = specs[k];
        out += "{\"dim\": " + std::to_string(s.dim) + ", \"weights\": ";
        append_array(out, s.weights);
        out += ", \"iids\": ";
        append_array(out, s.iids);
        out += ", \"x_opt\": ";
        append_array(out, s.x_opt);
        out += ", \"scale_factors\": ";
        append_array(out, s.scale_factors);
        out += ", \"seed\": " + std::to_string(s.seed) + "}";
        out += k + 1 < specs.size() ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

std::vector<ProblemSpec> parse_specs(std::string_view text, const std::string& source)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(source, line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1), "", e.what());
    }
    if (!doc.is_array()) {
        throw ParseError(source, 1, "", "expected a JSON array of problem objects");
    }
    const auto lines = element_lines(text);
    std::vector<ProblemSpec> specs;
    for (std::size_t k = 0; k < doc.size(); ++k) {
        const json& obj = doc[k];
        const std::size_t line = k < lines.size() ? lines[k] : 0;
        if (!obj.is_object()) {
            throw ParseError(source, line, "", "problem " + std::to_string(k) + " is not an object");
        }
        ProblemSpec s;
        if (!obj.contains("dim") || !obj.at("dim").is_number_integer()) {
            throw ParseError(source, line, "dim", "missing or not an integer");
        }
        s.dim = obj.at("dim").get<int>();
        s.weights = fixed_array<kComponents, double>(obj, "weights", source, line);
        s.iids = fixed_array<kComponents, int>(obj, "iids", source, line);
        s.scale_factors = fixed_array<kComponents, double>(obj, "scale_factors", source, line);
        if (!obj.contains("x_opt") || !obj.at("x_opt").is_array()) {
            throw ParseError(source, line, "x_opt", "missing or not an array");
        }
        for (const json& v : obj.at("x_opt")) {
            if (!v.is_number()) {
                throw ParseError(source, line, "x_opt", "entry is not a number");
            }
            s.x_opt.push_back(v.get<double>());
        }
        if (static_cast<int>(s.x_opt.size()) != s.dim) {
            throw ParseError(source, line, "x_opt", "length does not match dim");
        }
        if (!obj.contains("seed") || !obj.at("seed").is_number_integer()) {
            throw ParseError(source, line, "seed", "missing or not an integer");
        }
        s.seed = obj.at("seed").get<std::uint64_t>();
        // Validate ranges by building the weight vector and checking the rest
        // the same way make_problem() does, without constructing instances.
        try {
            WeightVector w(s.weights);
            (void)w;
        } catch (const ParameterError& e) {
            throw ParseError(source, line, e.field(), e.what());
        }
        for (int iid : s.iids) {
            if (iid < 1 || iid > 100) {
                throw ParseError(source, line, "iids", "entries must be in 1..100");
            }
        }
        for (double v : s.x_opt) {
            if (!(v >= -5.0 && v <= 5.0)) {
                throw ParseError(source, line, "x_opt", "coordinates must lie in [-5, 5]");
            }
        }
        for (double v : s.scale_factors) {
            if (!(v > 0.0)) {
                throw ParseError(source, line, "scale_factors", "entries must be positive");
            }
        }
        if (s.dim < 2) {
            throw ParseError(source, line, "dim", "must be >= 2");
        }
        specs.push_back(std::move(s));
    }
    return specs;
}

std::vector<ProblemSpec> read_specs(const std::filesystem::path& path)
{
    return parse_specs(read_file(path), path.string());
}

} // namespace mabbob::io
