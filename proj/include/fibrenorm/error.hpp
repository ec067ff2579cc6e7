#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fibrenorm {

enum class ErrorKind {
  range,
  partial_signature,
  malformed_input,
  precondition,
  singular_rescale,
  no_valid_beta,
  domain,
  truncation_overflow,
  composition_domain,
  non_convergence,
  conditioning,
  neutral_multiplier,
  numerical_failure,
  bracket,
  combinatorics,
  precision_limit,
  degenerate_sequence,
  bootstrap_domain,
  monodromy,
  depth_limit,
  degenerate_region,
  coverage,
  degenerate_map,
  inconclusive,
  usage,
  io,
  parse,
};

const char* to_string(ErrorKind kind);

// Every failure in the library is reported through this type. `value` carries
// the numeric payload named by the contract (escape time, offending ratio,
// max attainable n, ...); `trace` carries residual histories.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double value = 0.0,
        std::vector<double> trace = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        value_(value),
        trace_(std::move(trace)) {}

  ErrorKind kind() const { return kind_; }
  double value() const { return value_; }
  const std::vector<double>& trace() const { return trace_; }

 private:
  ErrorKind kind_;
  double value_;
  std::vector<double> trace_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::range: return "range error";
    case ErrorKind::partial_signature: return "partial signature";
    case ErrorKind::malformed_input: return "malformed input";
    case ErrorKind::precondition: return "precondition violated";
    case ErrorKind::singular_rescale: return "singular rescale";
    case ErrorKind::no_valid_beta: return "no valid beta";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::truncation_overflow: return "truncation overflow";
    case ErrorKind::composition_domain: return "composition domain error";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::conditioning: return "conditioning error";
    case ErrorKind::neutral_multiplier: return "neutral multiplier";
    case ErrorKind::numerical_failure: return "numerical failure";
    case ErrorKind::bracket: return "bracket error";
    case ErrorKind::combinatorics: return "combinatorics error";
    case ErrorKind::precision_limit: return "precision limit";
    case ErrorKind::degenerate_sequence: return "degenerate sequence";
    case ErrorKind::bootstrap_domain: return "bootstrap domain error";
    case ErrorKind::monodromy: return "monodromy error";
    case ErrorKind::depth_limit: return "depth limit";
    case ErrorKind::degenerate_region: return "degenerate region";
    case ErrorKind::coverage: return "coverage error";
    case ErrorKind::degenerate_map: return "degenerate map";
    case ErrorKind::inconclusive: return "inconclusive";
    case ErrorKind::usage: return "usage error";
    case ErrorKind::io: return "I/O error";
    case ErrorKind::parse: return "parse error";
  }
  return "error";
}

}  // namespace fibrenorm
