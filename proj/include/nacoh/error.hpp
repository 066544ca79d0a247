#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nacoh {

enum class ErrorKind {
  ShapeMismatch,
  NotAssociative,
  NoIdentity,
  NoInverse,
  NotSubgroup,
  NotNormal,
  NotHomomorphism,
  TooLarge,
  NotAutomorphism,
  NotHomomorphic,
  IdentityNotFixed,
  NotEquivariant,
  MuNotGEquivariant,
  CompatibilityFailure,
  CenterNotStable,
  ImageNotStable,
  NotCrossed,
  NotClassTwo,
  Abelian,
  NotAbelian,
  NoCharacter,
  NotGenerating,
  NotADerivation,
  CompatibilityNotEstablished,
  Thm32Unsatisfied,
  WellDefinednessFailure,
  InclusionViolated,
  InvalidRep,
  CosetLimit,
  UnknownConstructor,
  ParamOutOfRange,
  Syntax,
  UnresolvedReference,
  UnknownTask,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::NotSubgroup: return "NotSubgroup";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotHomomorphism: return "NotHomomorphism";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::NotHomomorphic: return "NotHomomorphic";
    case ErrorKind::IdentityNotFixed: return "IdentityNotFixed";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::MuNotGEquivariant: return "MuNotGEquivariant";
    case ErrorKind::CompatibilityFailure: return "CompatibilityFailure";
    case ErrorKind::CenterNotStable: return "CenterNotStable";
    case ErrorKind::ImageNotStable: return "ImageNotStable";
    case ErrorKind::NotCrossed: return "NotCrossed";
    case ErrorKind::NotClassTwo: return "NotClassTwo";
    case ErrorKind::Abelian: return "Abelian";
    case ErrorKind::NotAbelian: return "NotAbelian";
    case ErrorKind::NoCharacter: return "NoCharacter";
    case ErrorKind::NotGenerating: return "NotGenerating";
    case ErrorKind::NotADerivation: return "NotADerivation";
    case ErrorKind::CompatibilityNotEstablished: return "CompatibilityNotEstablished";
    case ErrorKind::Thm32Unsatisfied: return "Thm32Unsatisfied";
    case ErrorKind::WellDefinednessFailure: return "WellDefinednessFailure";
    case ErrorKind::InclusionViolated: return "InclusionViolated";
    case ErrorKind::InvalidRep: return "InvalidRep";
    case ErrorKind::CosetLimit: return "CosetLimit";
    case ErrorKind::UnknownConstructor: return "UnknownConstructor";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::UnresolvedReference: return "UnresolvedReference";
    case ErrorKind::UnknownTask: return "UnknownTask";
  }
  return "Unknown";
}

/// Every failure raised by the library. The witness carries the concrete
/// element indices (or line/column for syntax errors) that exhibit the
/// failure, in the order named by the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string const& msg,
        std::vector<std::int64_t> witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::vector<std::int64_t> const& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::int64_t> witness_;
};

namespace detail {

template <typename... Ts>
std::string cat(Ts const&... xs) {
  std::ostringstream os;
  (os << ... << xs);
  return os.str();
}

}  // namespace detail

}  // namespace nacoh
