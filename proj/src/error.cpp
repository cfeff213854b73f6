#include "groupoidal/error.hpp"
#include "groupoidal/report.hpp"

namespace groupoidal {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::BackendMismatch: return "BackendMismatch";
    case ErrorKind::DuplicateElement: return "DuplicateElement";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::NotATopology: return "NotATopology";
    case ErrorKind::InvalidMor: return "InvalidMor";
    case ErrorKind::NotACover: return "NotACover";
    case ErrorKind::ShearNotIso: return "ShearNotIso";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::InvalidGroupoid: return "InvalidGroupoid";
    case ErrorKind::InvalidFunctor: return "InvalidFunctor";
    case ErrorKind::InvalidAction: return "InvalidAction";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotASection: return "NotASection";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::NotFibrewiseConstant: return "NotFibrewiseConstant";
    case ErrorKind::DescentFailure: return "DescentFailure";
    case ErrorKind::NotABibundleFunctor: return "NotABibundleFunctor";
    case ErrorKind::MiddleMismatch: return "MiddleMismatch";
    case ErrorKind::NotAnEquivalence: return "NotAnEquivalence";
    case ErrorKind::NotAnActor: return "NotAnActor";
    case ErrorKind::NotBasic: return "NotBasic";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnresolvedName: return "UnresolvedName";
    case ErrorKind::UnknownCommand: return "UnknownCommand";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
  }
  return "Error";
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& f : findings) {
    out += f.pass ? "[pass] " : "[FAIL] ";
    out += f.check;
    if (!f.witness.empty()) out += "  witness: " + f.witness;
    out += '\n';
  }
  return out;
}

}  // namespace groupoidal
