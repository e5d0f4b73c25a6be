#pragma once

#include <stdexcept>
#include <string>

namespace hsurf {

// Configuration / input-file problems (bad flags, malformed files, bad keys).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: quadrature that did not converge, degenerate transforms.
// Carries the last two refinement estimates when they are meaningful.
struct NumericError : std::runtime_error {
    double last_estimate = 0.0;
    double previous_estimate = 0.0;
    NumericError(const std::string& what, double prev, double last)
        : std::runtime_error(what), last_estimate(last), previous_estimate(prev) {}
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration budget exhausted; reports partial progress.
struct BudgetError : std::runtime_error {
    long long visited = 0;
    long long retained = 0;
    BudgetError(const std::string& what, long long visited_, long long retained_)
        : std::runtime_error(what), visited(visited_), retained(retained_) {}
};

// A mathematical certificate (an inequality the run was asked to verify)
// failed; carries a printable witness.
struct CertificateError : std::runtime_error {
    std::string witness;
    CertificateError(const std::string& what, std::string witness_)
        : std::runtime_error(what), witness(std::move(witness_)) {}
};

// Caller violated a documented domain restriction of an operation.
struct PreconditionError : std::invalid_argument {
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace hsurf
