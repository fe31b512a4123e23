#pragma once

#include <stdexcept>
#include <string>

namespace regionctl {

/// Configuration / input validation failure (bad key, bad value, bad file).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative solver did not reach its tolerance, or produced an invalid state
/// (negative density, non-finite values). Carries the final residual when known.
class SolverFailure : public std::runtime_error {
public:
    explicit SolverFailure(const std::string& what, double residual = -1.0)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

}  // namespace regionctl
