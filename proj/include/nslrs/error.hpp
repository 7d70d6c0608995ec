#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nslrs {

enum class ErrorKind {
  NotPrime,
  NotPrimePower,
  ReducibleModulus,
  DegreeMismatch,
  ContextMismatch,
  DivisionByZero,
  ZeroElement,
  OrderUnavailable,
  NotCoprime,
  FieldTooLarge,
  DivisionByZeroPoly,
  ZeroConstantTerm,
  ReducibleInput,
  TooLarge,
  BadInitLength,
  ZeroSequence,
  InsufficientTerms,
  SingularSystem,
  NotAGSequence,
  NotABasis,
  SingularMap,
  NotFixing,
  EnumerationTooLarge,
  SearchBudgetExceeded,
  BadLiftExponent,
  BadExtensionFactor,
  BadTwist,
  BadGenerator,
  Overflow,
  Parse,
  Internal,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown by certify() when a supplied map does not fix the unity group.
class NotFixingError : public Error {
 public:
  NotFixingError(std::size_t index, const std::string& what)
      : Error(ErrorKind::NotFixing, what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace nslrs
