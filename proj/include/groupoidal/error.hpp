#ifndef GROUPOIDAL_ERROR_HPP
#define GROUPOIDAL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace groupoidal {

enum class ErrorKind {
  BoundaryMismatch,
  BackendMismatch,
  DuplicateElement,
  UnknownElement,
  NotATopology,
  InvalidMor,
  NotACover,
  ShearNotIso,
  NotAssociative,
  InvalidGroupoid,
  InvalidFunctor,
  InvalidAction,
  BudgetExceeded,
  NotASection,
  NotComposable,
  NotFibrewiseConstant,
  DescentFailure,
  NotABibundleFunctor,
  MiddleMismatch,
  NotAnEquivalence,
  NotAnActor,
  NotBasic,
  NotMonotone,
  SyntaxError,
  UnresolvedName,
  UnknownCommand,
  TypeMismatch,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::string witness = {})
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

}  // namespace groupoidal

#endif
