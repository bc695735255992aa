#pragma once

#include <stdexcept>
#include <string>

namespace mabbob {

// Invalid argument to a public operation. `field()` names the offending input.
class ParameterError : public std::invalid_argument {
public:
    ParameterError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// An objective produced a non-finite value.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A request beyond what the implementation supports (e.g. Sobol' dimension).
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file. Line is 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, std::size_t line, std::string field, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + (field.empty() ? "" : " [" + field + "]") +
                             ": " + what),
          line_(line), field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

} // namespace mabbob
