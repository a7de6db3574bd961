#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cohom {

enum class ErrorKind {
  NotAssociative,
  NoIdentity,
  NoInverse,
  IndexOutOfRange,
  UnknownFamily,
  ActionNotHomomorphic,
  ActionBreaksRelations,
  BadIdentityAction,
  SourceNotTorsion,
  DegreeMismatch,
  NotACocycle,
  ResourceLimit,
  GroupMismatch,
  ModuleMismatch,
  PairingMismatch,
  NonTorsionValue,
  DegreeTooLow,
  ExponentMismatch,
  KernelNotFinite,
  NotFreeModule,
  IntegerOverflow,
  ParseError,
  InvalidArgument,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::ActionNotHomomorphic: return "ActionNotHomomorphic";
    case ErrorKind::ActionBreaksRelations: return "ActionBreaksRelations";
    case ErrorKind::BadIdentityAction: return "BadIdentityAction";
    case ErrorKind::SourceNotTorsion: return "SourceNotTorsion";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::ModuleMismatch: return "ModuleMismatch";
    case ErrorKind::PairingMismatch: return "PairingMismatch";
    case ErrorKind::NonTorsionValue: return "NonTorsionValue";
    case ErrorKind::DegreeTooLow: return "DegreeTooLow";
    case ErrorKind::ExponentMismatch: return "ExponentMismatch";
    case ErrorKind::KernelNotFinite: return "KernelNotFinite";
    case ErrorKind::NotFreeModule: return "NotFreeModule";
    case ErrorKind::IntegerOverflow: return "IntegerOverflow";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Library-wide exception. `witness` carries element indices (a triple for
/// associativity, a tuple for cocycle failures, a single index otherwise).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<std::size_t> witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> witness_;
};

}  // namespace cohom
