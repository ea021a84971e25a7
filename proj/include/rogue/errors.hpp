#pragma once

#include <stdexcept>
#include <string>

namespace rogue {

/// Bad arguments or an inconsistent configuration (CLI exit code 2).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A result left the range of double precision (CLI exit code 3).
class NumericOverflow : public std::overflow_error {
public:
    NumericOverflow(const std::string& what, double exponent)
        : std::overflow_error(what), exponent_(exponent)
    {}
    double exponent() const noexcept { return exponent_; }

private:
    double exponent_;
};

/// A NaN or other non-finite value where a finite one was required (CLI exit
/// code 3).
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A projector denominator collapsed. Collapsing solutions have genuine
/// poles, so this is an expected outcome at isolated points.
class SingularPoint : public std::runtime_error {
public:
    explicit SingularPoint(int level)
        : std::runtime_error("projector denominator collapsed at level " + std::to_string(level)), level_(level)
    {}
    int level() const noexcept { return level_; }

private:
    int level_;
};

} // namespace rogue
