#pragma once

#include <stdexcept>
#include <string>

namespace rotsym {

enum class ErrorKind {
    DegenerateInterval,
    NonFiniteValue,
    GridMismatch,
    MissingDerivative,
    InvalidExponent,
    InvalidArgument,
    NonFiniteCoefficient,
    NonPositiveCoefficient,
    SingularSystem,
    MuTooLarge,
    NoValidMu,
    MaxPrincipleInapplicable,
    NotAPoissonSolution,
    LedgerMismatch,
    NoSolution,
    NonPositiveProfile,
    Unstable,
    CertificateInvalid,
    BoundaryDataTooLarge,
    NotContracting,
    BetaZero,
    CurvatureConditionViolated,
    EpsilonTooLarge,
    NoConvergence,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (and tests) can branch on it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

} // namespace rotsym
