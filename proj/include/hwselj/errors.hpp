#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hwselj {

/// Malformed input file; `line` is the 1-based line number of the offending row.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Configuration problem; `field` is the dotted section.key path.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(field) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// The applied load exceeds what the joint can hold anywhere in the search range.
class NoEquilibriumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Step refinement failed to reach the requested tolerance.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, double achieved_rel_tol)
        : std::runtime_error(what + " (achieved relative tolerance " +
                             std::to_string(achieved_rel_tol) + ")"),
          achieved_(achieved_rel_tol) {}

    double achieved_rel_tol() const { return achieved_; }

private:
    double achieved_;
};

}  // namespace hwselj
