#pragma once

#include <stdexcept>
#include <string>

namespace relthue {

enum class ErrorCode {
  ParseError,        // malformed problem file / schema violation
  NonMonic,          // relative polynomial not monic (unit leading coefficient)
  RepeatedRoots,     // base poly not squarefree or f has coincident conjugates
  Applicability,     // n > m (resp. n > 2m totally real) violated
  NonIntegral,       // ring arithmetic left the integral basis
  WorkCapExceeded,   // enumeration work estimate above the configured cap
  NonConvergence,    // root finder did not reach the residual target
  MatchAmbiguity,    // root refinement could not match old labels bijectively
  PrecisionExhausted,// reduction retry ladder ran out
  DependentColumns,  // lattice basis not linearly independent
  NotPositiveDefinite,
  Incomplete,        // solve produced a partial result
  Internal
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return "parse_error";
    case ErrorCode::NonMonic: return "non_monic";
    case ErrorCode::RepeatedRoots: return "repeated_roots";
    case ErrorCode::Applicability: return "applicability";
    case ErrorCode::NonIntegral: return "non_integral";
    case ErrorCode::WorkCapExceeded: return "work_cap_exceeded";
    case ErrorCode::NonConvergence: return "non_convergence";
    case ErrorCode::MatchAmbiguity: return "match_ambiguity";
    case ErrorCode::PrecisionExhausted: return "precision_exhausted";
    case ErrorCode::DependentColumns: return "dependent_columns";
    case ErrorCode::NotPositiveDefinite: return "not_positive_definite";
    case ErrorCode::Incomplete: return "incomplete";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace relthue
