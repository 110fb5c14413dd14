#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace matsemi {

  enum class ErrorKind {
    NotPrime,
    CapExceeded,
    InternalError,
    DivisionByZero,
    DimMismatch,
    NotInvertible,
    AmbientMismatch,
    RankNotOne,
    NotClosed,
    NotAChain,
    NotNilpotent,
    PreconditionViolated,
    SignatureMismatch,
    NotInContext,
    ZeroElement,
    BadSignature,
    BadK,
    InvariantViolation,
    ContainmentViolation,
    EmptyFamily,
    ParseError,
  };

  constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
      case ErrorKind::NotPrime: return "NotPrime";
      case ErrorKind::CapExceeded: return "CapExceeded";
      case ErrorKind::InternalError: return "InternalError";
      case ErrorKind::DivisionByZero: return "DivisionByZero";
      case ErrorKind::DimMismatch: return "DimMismatch";
      case ErrorKind::NotInvertible: return "NotInvertible";
      case ErrorKind::AmbientMismatch: return "AmbientMismatch";
      case ErrorKind::RankNotOne: return "RankNotOne";
      case ErrorKind::NotClosed: return "NotClosed";
      case ErrorKind::NotAChain: return "NotAChain";
      case ErrorKind::NotNilpotent: return "NotNilpotent";
      case ErrorKind::PreconditionViolated: return "PreconditionViolated";
      case ErrorKind::SignatureMismatch: return "SignatureMismatch";
      case ErrorKind::NotInContext: return "NotInContext";
      case ErrorKind::ZeroElement: return "ZeroElement";
      case ErrorKind::BadSignature: return "BadSignature";
      case ErrorKind::BadK: return "BadK";
      case ErrorKind::InvariantViolation: return "InvariantViolation";
      case ErrorKind::ContainmentViolation: return "ContainmentViolation";
      case ErrorKind::EmptyFamily: return "EmptyFamily";
      case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
  }

  //! Every failure in the library is reported through this exception; the
  //! kind is what callers (and the CLI exit-code mapping) dispatch on.
  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string const& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what),
          _kind(kind) {}

    ErrorKind kind() const noexcept {
      return _kind;
    }

   private:
    ErrorKind _kind;
  };

  [[noreturn]] inline void fail(ErrorKind kind, std::string const& what) {
    throw Error(kind, what);
  }

}  // namespace matsemi
