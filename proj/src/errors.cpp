#include "efl/errors.hpp"

namespace efl {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::ConfigTooWeak: return "ConfigTooWeak";
    case ErrorKind::NearZeroOfZeta: return "NearZeroOfZeta";
    case ErrorKind::ContourHitsSingularity: return "ContourHitsSingularity";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::LimitTooLarge: return "LimitTooLarge";
    case ErrorKind::TableTooSmall: return "TableTooSmall";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorKind::CountMismatch: return "CountMismatch";
    case ErrorKind::NetworkError: return "NetworkError";
    case ErrorKind::DigestMismatch: return "DigestMismatch";
    case ErrorKind::MissedZero: return "MissedZero";
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::TimeDomainUndefined: return "TimeDomainUndefined";
    case ErrorKind::PoleInput: return "PoleInput";
    case ErrorKind::TransformPole: return "TransformPole";
    case ErrorKind::AtJumpPoint: return "AtJumpPoint";
    case ErrorKind::EmptyZeroSet: return "EmptyZeroSet";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::CoefficientsTooShort: return "CoefficientsTooShort";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace efl
