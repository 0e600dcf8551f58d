#ifndef POLYDEG_ERROR_HPP
#define POLYDEG_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace polydeg {

enum class Errc {
  NonUnit,
  NotAField,
  ArityMismatch,
  ParseError,
  BudgetExceeded,
  ZeroComponent,
  Inconclusive,
  UnboundedSemigroup,
  InternalInfeasible,
  NotElementaryWord,
  TheoremViolated,
  PreconditionFailed,
  MissingWitness,
  NotIndependent,
  Unsupported,
  BadWitness,
  Unbounded,
  InvalidArgument,
};

inline std::string_view errc_name(Errc c)
{
  switch (c) {
  case Errc::NonUnit: return "NonUnit";
  case Errc::NotAField: return "NotAField";
  case Errc::ArityMismatch: return "ArityMismatch";
  case Errc::ParseError: return "ParseError";
  case Errc::BudgetExceeded: return "BudgetExceeded";
  case Errc::ZeroComponent: return "ZeroComponent";
  case Errc::Inconclusive: return "Inconclusive";
  case Errc::UnboundedSemigroup: return "UnboundedSemigroup";
  case Errc::InternalInfeasible: return "InternalInfeasible";
  case Errc::NotElementaryWord: return "NotElementaryWord";
  case Errc::TheoremViolated: return "TheoremViolated";
  case Errc::PreconditionFailed: return "PreconditionFailed";
  case Errc::MissingWitness: return "MissingWitness";
  case Errc::NotIndependent: return "NotIndependent";
  case Errc::Unsupported: return "Unsupported";
  case Errc::BadWitness: return "BadWitness";
  case Errc::Unbounded: return "Unbounded";
  case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

class ParseError : public Error {
public:
  ParseError(std::size_t offset, const std::string& what)
    : Error(Errc::ParseError, what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what)
{
  throw Error(code, what);
}

inline void require(bool ok, Errc code, const std::string& what)
{
  if (!ok)
    throw Error(code, what);
}

} // namespace polydeg

#endif
