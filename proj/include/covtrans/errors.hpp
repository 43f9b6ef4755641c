#pragma once

#include <stdexcept>
#include <string>

namespace covtrans {

// Base for every error raised by the library. The CLI maps the concrete type
// onto its exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters, failed feasibility / admissibility inequalities.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An exhaustive check was requested above the verification budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A serialized document contradicts itself (sizes vs. listed elements, ...).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Malformed group / tower descriptor.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string token)
      : Error(message + " (at '" + token + "')"), token_(std::move(token)) {}

  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

// A step that the theory guarantees failed anyway. Carries the full state in
// the message so the failing run can be reproduced.
class SoundnessViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace covtrans
