#pragma once

#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace subsym {

// One violated invariant, e.g. {"alpha", "must lie in (0, 1)"}.
struct ConstraintViolation {
    std::string field;
    std::string constraint;
};

std::string describe(const std::vector<ConstraintViolation>& violations);

// Rejected parameters or malformed input documents. Maps to CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<ConstraintViolation> violations)
        : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

    ValidationError(std::string field, std::string constraint)
        : ValidationError(std::vector<ConstraintViolation>{
              {std::move(field), std::move(constraint)}}) {}

    const std::vector<ConstraintViolation>& violations() const noexcept { return violations_; }

private:
    std::vector<ConstraintViolation> violations_;
};

// Numerical failure: quadrature non-convergence, Laplace domain or moment-strip
// violations, truncation search exhaustion, sampler iteration caps.
// Maps to CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}

    NumericalError(const std::string& what, double error_estimate)
        : std::runtime_error(what + " (achieved error estimate " +
                             [](double e) {
                                 char buf[32];
                                 std::snprintf(buf, sizeof buf, "%.3g", e);
                                 return std::string(buf);
                             }(error_estimate) +
                             ")"),
          error_estimate_(error_estimate) {}

    // NaN when the failure carries no quantitative estimate.
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double error_estimate_ = std::numeric_limits<double>::quiet_NaN();
};

// Unreadable input or unwritable output. Maps to CLI exit code 3.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace subsym
