#pragma once

#include <stdexcept>
#include <string>

namespace framepot {

enum class Errc {
  // input errors (CLI exit code 1)
  DuplicateRotation,
  EmptyRotation,
  SizeViolation,
  NotNormalized,
  DependentHamiltonians,
  RankDeficient,
  InvalidArchitecture,
  DegenerateFit,
  ParseError,
  UsageError,
  // resource caps (CLI exit code 2)
  RankTooLarge,
  TooManyCircuits,
  TooManyQubits,
  SupportTooLarge,
  GridTooLarge,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DuplicateRotation: return "DuplicateRotation";
    case Errc::EmptyRotation: return "EmptyRotation";
    case Errc::SizeViolation: return "SizeViolation";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::DependentHamiltonians: return "DependentHamiltonians";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::InvalidArchitecture: return "InvalidArchitecture";
    case Errc::DegenerateFit: return "DegenerateFit";
    case Errc::ParseError: return "ParseError";
    case Errc::UsageError: return "UsageError";
    case Errc::RankTooLarge: return "RankTooLarge";
    case Errc::TooManyCircuits: return "TooManyCircuits";
    case Errc::TooManyQubits: return "TooManyQubits";
    case Errc::SupportTooLarge: return "SupportTooLarge";
    case Errc::GridTooLarge: return "GridTooLarge";
  }
  return "UnknownError";
}

// Caps that bound memory/time rather than flagging bad input; the CLI maps
// them to a distinct exit status so drivers can distinguish "won't fit" from
// "malformed".
inline bool is_resource_cap(Errc c) {
  switch (c) {
    case Errc::RankTooLarge:
    case Errc::TooManyCircuits:
    case Errc::TooManyQubits:
    case Errc::SupportTooLarge:
    case Errc::GridTooLarge: return true;
    default: return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace framepot
