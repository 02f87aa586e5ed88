#pragma once

#include <stdexcept>
#include <string>

namespace stirap {

/// Invalid user-supplied configuration. The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition of a library function.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An integrator certification bound was breached during evolution.
/// Carries the earliest time at which the breach was detected.
/// The CLI maps this to exit code 2.
class NumericFailure : public std::runtime_error {
public:
    NumericFailure(const std::string& what, double t_fail)
        : std::runtime_error(what + " (first offending time t=" + std::to_string(t_fail) + ")"),
          t_fail(t_fail) {}

    double t_fail;
};

} // namespace stirap
