#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace f4kit {

enum class ErrorCode {
  InvalidInput,
  InvalidField,
  DivisionByZero,
  FieldMismatch,
  ZeroElement,
  PrimeFieldHasNoRealPlaces,
  UnsupportedField,
  DegenerateForm,
  UnsupportedCase,
  SearchSpaceTooLarge,
  ZeroParameter,
  TooManyDoublings,
  AlgebraMismatch,
  UnsupportedExtension,
  NotPrimitiveIdempotent,
  UnsupportedIdempotent,
  NotOnTorus,
  SingularCayley,
  NotGammaOrthogonal,
  NonNormalizableGamma,
  InternalInvariant,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library. The code is stable and is what the
/// CLI maps onto exit codes and JSON diagnostics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace f4kit
