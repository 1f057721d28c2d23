#pragma once

#include <stdexcept>
#include <string>

namespace specdim {

// Broad failure classes. The CLI maps these onto its exit codes.
enum class ErrorKind {
    InvalidArgument,  // violated precondition
    InputData,        // malformed or unusable input file / table
    PointMass,        // pointwise density requested for a degenerate NNSD
    Extrapolation,    // tabulated model evaluated outside its table
    Convergence,      // quadrature or eigensolver did not converge
    Bracketing,       // root finder given a bracket without sign change
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Carries the error estimate reached when an iterative method gave up.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : Error(ErrorKind::Convergence, what), achieved_(achieved) {}

    double achieved_error() const noexcept { return achieved_; }

private:
    double achieved_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
    if (!cond) throw Error(ErrorKind::InvalidArgument, what);
}

}  // namespace specdim
