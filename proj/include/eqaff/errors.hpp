#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eqaff {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad expressions, bad scenarios, unbound names. The CLI maps
// these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

class LexError : public InputError {
 public:
  LexError(std::size_t position, const std::string& what)
      : InputError("LexError at " + std::to_string(position) + ": " + what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class SyntaxError : public InputError {
 public:
  SyntaxError(std::size_t position, std::string expectation)
      : InputError("SyntaxError at " + std::to_string(position) + ": " + expectation),
        position_(position),
        expectation_(std::move(expectation)) {}
  std::size_t position() const noexcept { return position_; }
  const std::string& expectation() const noexcept { return expectation_; }

 private:
  std::size_t position_;
  std::string expectation_;
};

class UnboundIdentifier : public InputError {
 public:
  explicit UnboundIdentifier(std::string name)
      : InputError("UnboundIdentifier: " + name), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class ScenarioError : public InputError {
 public:
  using InputError::InputError;
};

// Numerical failures on otherwise well-formed input. Exit code 3.
class ComputationError : public Error {
 public:
  using Error::Error;
};

#define EQAFF_DEFINE_COMPUTATION_ERROR(Name)                          \
  class Name : public ComputationError {                              \
   public:                                                            \
    explicit Name(const std::string& what) : ComputationError(#Name ": " + what) {} \
  }

EQAFF_DEFINE_COMPUTATION_ERROR(OrderMismatch);
EQAFF_DEFINE_COMPUTATION_ERROR(DivisionByNearZero);
EQAFF_DEFINE_COMPUTATION_ERROR(DomainError);
EQAFF_DEFINE_COMPUTATION_ERROR(DegenerateJet);
EQAFF_DEFINE_COMPUTATION_ERROR(DegenerateMetric);
EQAFF_DEFINE_COMPUTATION_ERROR(SingularCurve);
EQAFF_DEFINE_COMPUTATION_ERROR(DegenerateCurve);
EQAFF_DEFINE_COMPUTATION_ERROR(GeodesicRelationUndefined);
EQAFF_DEFINE_COMPUTATION_ERROR(QuadratureFailure);
EQAFF_DEFINE_COMPUTATION_ERROR(InternalInconsistency);

#undef EQAFF_DEFINE_COMPUTATION_ERROR

}  // namespace eqaff
