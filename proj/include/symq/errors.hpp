#pragma once

#include <stdexcept>
#include <string>

namespace symq {

// Base of everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
    using Error::Error;
};

// Eigensolver failed to converge within its sweep budget.
struct NonConvergence : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

// A computation would materialize more data than the configured cap allows.
struct ScaleExceeded : Error {
    using Error::Error;
};

struct NotSymmetric : Error {
    double residual;
    explicit NotSymmetric(double r)
        : Error("state is not permutation-symmetric (residual " + std::to_string(r) + ")"),
          residual(r) {}
};

// Theorem-1 premise violated: the per-particle operations do not map the
// state back into the symmetric subspace.
struct NotSymmetricImage : Error {
    double residual;
    explicit NotSymmetricImage(double r)
        : Error("local operations do not produce a symmetric image (residual " +
                std::to_string(r) + ")"),
          residual(r) {}
};

struct ZeroState : Error {
    ZeroState() : Error("state has zero norm") {}
};

struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " at position " + std::to_string(pos)), position(pos) {}
};

struct InsufficientDerivatives : Error {
    using Error::Error;
};

struct IllConditionedNodes : Error {
    using Error::Error;
};

struct SingularRoot : Error {
    using Error::Error;
};

struct ResidualTooLarge : Error {
    double residual;
    ResidualTooLarge(const std::string& what, double r)
        : Error(what + " (residual " + std::to_string(r) + ")"), residual(r) {}
};

struct NotUnitary : Error {
    using Error::Error;
};

}  // namespace symq
