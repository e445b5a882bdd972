#pragma once
#include <stdexcept>
#include <string>

namespace spinlab {

// Precondition or argument-range violation.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input violates a structural contract (non-Hermitian, unnormalized, ...).
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Iterative method failed or produced an inconsistent value.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problem size beyond the configured dense limits.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverError : NumericError {
    double best_residual;
    SolverError(const std::string& what, double residual)
        : NumericError(what), best_residual(residual) {}
};

struct ClusteringError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace spinlab
