#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace efl {

enum class ErrorKind {
  InvalidArgument,
  PoleAtOne,
  ConfigTooWeak,
  NearZeroOfZeta,
  ContourHitsSingularity,
  QuadratureNotConverged,
  LimitTooLarge,
  TableTooSmall,
  ParseError,
  MonotonicityViolation,
  CountMismatch,
  NetworkError,
  DigestMismatch,
  MissedZero,
  OrderTooLarge,
  TimeDomainUndefined,
  PoleInput,
  TransformPole,
  AtJumpPoint,
  EmptyZeroSet,
  UnsupportedFamily,
  CoefficientsTooShort,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Single exception type for the whole library; the kind is the taxonomy.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace efl
