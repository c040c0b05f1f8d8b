#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ultrashort {

/// Domain failure categories. The CLI prints name() on stderr and exits 1.
enum class ErrorKind {
  ParseError,
  InvalidPolynomial,
  InvalidArgument,
  NonPrimeModulus,
  ModulusTooLarge,
  RamifiedPrime,
  NotSplit,
  NonInvertibleRoot,
  ZeroRoot,
  ZeroRootWithNegativeExponent,
  VanishingValue,
  PrecisionExhausted,
  OutOfRangeParameter,
  InvalidDescriptor,
  InvalidPairing,
  TooLarge,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidPolynomial: return "InvalidPolynomial";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorKind::ModulusTooLarge: return "ModulusTooLarge";
    case ErrorKind::RamifiedPrime: return "RamifiedPrime";
    case ErrorKind::NotSplit: return "NotSplit";
    case ErrorKind::NonInvertibleRoot: return "NonInvertibleRoot";
    case ErrorKind::ZeroRoot: return "ZeroRoot";
    case ErrorKind::ZeroRootWithNegativeExponent: return "ZeroRootWithNegativeExponent";
    case ErrorKind::VanishingValue: return "VanishingValue";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::OutOfRangeParameter: return "OutOfRangeParameter";
    case ErrorKind::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorKind::InvalidPairing: return "InvalidPairing";
    case ErrorKind::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace ultrashort
