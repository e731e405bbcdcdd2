#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "zsmsim/fabric/trace.hpp"
#include "zsmsim/types.hpp"

namespace zsm {

/// One expected hop of a closed-loop chain, matched on step label and on
/// globs over the source and target service kinds.
struct StepTemplate {
  std::string label;
  std::string source;
  std::string target;
  std::string role;  // human-readable description
};

/// Expected hop sequence of a scaling chain, excluding the closing outcome.
const std::vector<StepTemplate>& expected_steps(DeploymentOption option);

enum class ViolationKind { Ordering, Missing, Unexpected, ForbiddenHop, Terminal };
std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::Missing;
  std::string correlation_id;
  std::string step;  // label or role involved
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct Verdict {
  bool passed = true;
  std::vector<Violation> violations;
  std::size_t chains_checked = 0;
  std::size_t scaling_chains = 0;  // chains closed by a successful scale

  /// Same outcome and the same violations (chain counts are ignored).
  bool same_outcome(const Verdict& other) const {
    return passed == other.passed && violations == other.violations;
  }
};

/// Checks every closed-loop chain (a chain carrying a step label 3..10 or an
/// outcome record) against the option's expected sequence.
Verdict verify_trace(const std::vector<TraceRecord>& records, DeploymentOption option);
/// Parses then verifies; MalformedTrace on parse failures.
Verdict verify_trace_text(std::string_view text, DeploymentOption option);

std::string format_verdict(const Verdict& verdict);

/// Correlation ids of chains closed by a successful scale, in trace order.
std::vector<std::string> scaling_chain_ids(const std::vector<TraceRecord>& records);

/// Pretty-prints one correlation chain with its step labels and roles.
std::string explain(const std::vector<TraceRecord>& records, std::string_view correlation_id);

}  // namespace zsm
