// errors.hpp
// Exception hierarchy shared by the library and the command line tool.
//
// Precondition and domain violations raise std::invalid_argument directly.
// Everything that depends on external input or on numerical behaviour at
// runtime is split into two branches so callers (and the CLI exit-code
// mapping) can tell them apart:
//
//   data_error     - malformed or inconsistent input data (files, CSV rows,
//                    tick streams).  CLI exit code 2.
//   numeric_error  - degenerate or non-convergent numerical situations
//                    (zero variance, failed quadrature, empty support).
//                    CLI exit code 3.
//   support_error  - a numeric_error raised when too much probability mass
//                    of a distribution lies outside the support of the
//                    reference distribution; carries the uncovered mass.

#pragma once

#include <stdexcept>
#include <string>

namespace centropy {

class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& message)
        : std::runtime_error(message) {}
};

class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& message)
        : std::runtime_error(message) {}
};

class support_error : public numeric_error {
public:
    support_error(const std::string& message, double uncovered_mass)
        : numeric_error(message), uncovered_mass_(uncovered_mass) {}

    // Fraction of probability mass that had no counterpart in the
    // reference support.
    double uncovered_mass() const noexcept { return uncovered_mass_; }

private:
    double uncovered_mass_ = 0.0;
};

} // namespace centropy
