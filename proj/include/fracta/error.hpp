#pragma once

#include <stdexcept>
#include <string>

namespace fracta {

enum class ErrorKind {
  MalformedInstance,
  MalformedInput,
  MalformedHom,
  CodomainMismatch,
  NotParallel,
  BoundaryMismatch,
  BudgetExceeded,
  NotAFraction,
  UnsupportedBackend,
  IntegerOverflow,
  NoInducedMap,
  NoCF3Filler,
  NoPullbackInBase,
  ConeMalformed,
  Internal,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedInstance: return "MalformedInstance";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::MalformedHom: return "MalformedHom";
    case ErrorKind::CodomainMismatch: return "CodomainMismatch";
    case ErrorKind::NotParallel: return "NotParallel";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotAFraction: return "NotAFraction";
    case ErrorKind::UnsupportedBackend: return "UnsupportedBackend";
    case ErrorKind::IntegerOverflow: return "IntegerOverflow";
    case ErrorKind::NoInducedMap: return "NoInducedMap";
    case ErrorKind::NoCF3Filler: return "NoCF3Filler";
    case ErrorKind::NoPullbackInBase: return "NoPullbackInBase";
    case ErrorKind::ConeMalformed: return "ConeMalformed";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace fracta
