#pragma once

#include <stdexcept>
#include <string>

namespace gramops {

/// Bad user input: malformed files, inconsistent dimensions, violated preconditions.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text; message names the offending line or field.
class ParseError : public ValidationError {
public:
    explicit ParseError(const std::string& what) : ValidationError(what) {}
};

/// Problem size exceeds a configured limit.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative method failed to converge; carries the best estimate found.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate)
        : std::runtime_error(what), best_estimate(best_estimate) {}
    double best_estimate;
};

}  // namespace gramops
