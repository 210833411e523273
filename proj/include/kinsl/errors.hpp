#pragma once

#include <stdexcept>
#include <string>

namespace kinsl {

/// Bad user input: config, shapes, unsupported options.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Failure inside a solve (non-convergence, singular system).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File could not be read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : SolverError {
    double residual;
    ConvergenceError(const std::string& what, double r) : SolverError(what), residual(r) {}
};

}  // namespace kinsl
