#include "rotsym/errors.hpp"

namespace rotsym {

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::DegenerateInterval: return "DegenerateInterval";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::MissingDerivative: return "MissingDerivative";
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonFiniteCoefficient: return "NonFiniteCoefficient";
    case ErrorKind::NonPositiveCoefficient: return "NonPositiveCoefficient";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::MuTooLarge: return "MuTooLarge";
    case ErrorKind::NoValidMu: return "NoValidMu";
    case ErrorKind::MaxPrincipleInapplicable: return "MaxPrincipleInapplicable";
    case ErrorKind::NotAPoissonSolution: return "NotAPoissonSolution";
    case ErrorKind::LedgerMismatch: return "LedgerMismatch";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::NonPositiveProfile: return "NonPositiveProfile";
    case ErrorKind::Unstable: return "Unstable";
    case ErrorKind::CertificateInvalid: return "CertificateInvalid";
    case ErrorKind::BoundaryDataTooLarge: return "BoundaryDataTooLarge";
    case ErrorKind::NotContracting: return "NotContracting";
    case ErrorKind::BetaZero: return "BetaZero";
    case ErrorKind::CurvatureConditionViolated: return "CurvatureConditionViolated";
    case ErrorKind::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorKind::NoConvergence: return "NoConvergence";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
{
}

void fail(ErrorKind kind, const std::string& message)
{
    throw Error(kind, message);
}

} // namespace rotsym
