#include "zsmsim/scenario/verifier.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "zsmsim/error.hpp"
#include "zsmsim/fabric/domain.hpp"

namespace zsm {

namespace {

constexpr std::string_view kOutcomeKind = "zsm.loop.outcome";

std::vector<StepTemplate> monitoring_prefix() {
  return {
      {"1", "nf.*", "zsm.domain.data.collection", "NF -> Domain Data Collection"},
      {"2'", "zsm.domain.data.collection", "zsm.domain.data.storage", "Collection -> Domain Data Storage"},
      {"2", "zsm.domain.data.collection", "zsm.domain.analytics", "Collection -> Domain Analytics"},
      {"3", "zsm.domain.analytics", "zsm.domain.analytics.anomaly.*", "Analytics anomaly detection"},
      {"4", "zsm.domain.analytics", "zsm.domain.intelligence", "Analytics -> Domain Intelligence"},
      {"5", "zsm.domain.intelligence", "zsm.domain.orchestration", "Intelligence -> Domain Orchestration"},
      {"", "zsm.domain.orchestration", "zsm.domain.control.resource_lifecycle", "Orchestration -> Domain Control"},
  };
}

std::vector<StepTemplate> mano_suffix(const char* prepare, const char* scale, const char* vim) {
  return {
      {"", "mano.nfvo", "mano.nfvo.validate", "NFVO request validation"},
      {"", "mano.nfvo", "mano.nfvo.feasibility", "NFVO feasibility check"},
      {prepare, "mano.nfvo", "mano.vnfm.prepare", "NFVO -> VNFM"},
      {scale, "mano.vnfm", "mano.nfvo.scale_resource", "VNFM -> NFVO (Scale Resource)"},
      {vim, "mano.nfvo", "mano.vim.modify_resources", "NFVO -> VIM"},
  };
}

std::vector<StepTemplate> build(DeploymentOption option) {
  auto steps = monitoring_prefix();
  auto append = [&](std::vector<StepTemplate> more) { steps.insert(steps.end(), more.begin(), more.end()); };
  switch (option) {
    case DeploymentOption::Integrated1A:
      append({{"6", "zsm.domain.control", "3gpp.nssmf.subnet_provisioning", "Domain Control -> NSSMF"},
              {"7", "3gpp.nssmf", "mano.nfvo.scale_vnf", "NSSMF -> NFVO"}});
      append(mano_suffix("8", "9", "10"));
      break;
    case DeploymentOption::Integrated1B:
      append({{"6", "zsm.domain.control", "3gpp.nssmf.subnet_provisioning", "Domain Control -> NSSMF"},
              {"7", "3gpp.nssmf", "zsm.adapter.nfvo.scale_vnf", "NSSMF -> ZSM adapter"},
              {"", "zsm.adapter.nfvo", "Os-Ma-nfvo.ScaleVnf", "Adapter -> standalone NFVO (Os-Ma-nfvo)"}});
      append(mano_suffix("8", "9", "10"));
      break;
    case DeploymentOption::Complementary2:
      append({{"6", "zsm.domain.control", "zsm.adapter.nsmf.slice_provisioning", "Domain Control -> adapter"},
              {"", "zsm.adapter.nsmf", "3gpp.nsmf.slice_provisioning", "Adapter -> NSMF (via EGMF)"},
              {"7", "3gpp.nsmf", "3gpp.nssmf.subnet_provisioning", "NSMF -> NSSMF"},
              {"8", "3gpp.nssmf", "Os-Ma-nfvo.ScaleVnf", "NSSMF -> NFVO (Os-Ma-nfvo)"}});
      append(mano_suffix("9", "9", "9"));
      break;
  }
  return steps;
}

struct ForbiddenHop {
  std::string source;
  std::string target;
  std::string reason;
};

const std::vector<ForbiddenHop>& forbidden_hops(DeploymentOption option) {
  static const std::vector<ForbiddenHop> a{
      {"zsm.domain.control", "mano.*", "Domain Control must go through the NSSMF"},
      {"zsm.domain.control", "Os-Ma-nfvo.*", "Domain Control must go through the NSSMF"},
      {"*", "Os-Ma-nfvo.*", "no standalone NFVO in this option"},
      {"*", "zsm.adapter.*", "no adapter in this option"},
  };
  static const std::vector<ForbiddenHop> b{
      {"zsm.domain.control", "mano.*", "Domain Control must go through the NSSMF"},
      {"zsm.domain.control", "Os-Ma-nfvo.*", "Domain Control must go through the NSSMF"},
      {"*", "mano.nfvo.scale_vnf", "the NFVO is standalone in this option"},
      {"3gpp.nssmf", "Os-Ma-nfvo.*", "the integrated NSSMF reaches the NFVO through the adapter"},
  };
  static const std::vector<ForbiddenHop> c{
      {"zsm.domain.control", "3gpp.*", "Domain Control reaches the 3GPP system only through the adapter"},
      {"zsm.domain.control", "mano.*", "Domain Control must not reach MANO"},
      {"zsm.domain.control", "Os-Ma-nfvo.*", "Domain Control must not reach MANO"},
      {"*", "mano.nfvo.scale_vnf", "the NFVO is standalone in this option"},
  };
  switch (option) {
    case DeploymentOption::Integrated1A: return a;
    case DeploymentOption::Integrated1B: return b;
    case DeploymentOption::Complementary2: return c;
  }
  return a;
}

bool matches(const StepTemplate& step, const TraceRecord& r) {
  return r.step_label == step.label && glob_match(step.source, ref_kind(r.source)) &&
         glob_match(step.target, ref_kind(r.target));
}

bool is_outcome(const TraceRecord& r) { return ref_kind(r.target) == kOutcomeKind; }

bool is_loop_label(std::string_view label) {
  static const std::set<std::string_view> labels{"3", "4", "5", "6", "7", "8", "9", "10"};
  return labels.count(label) != 0;
}

/// `prefix` equals `kind` or is a dot-separated prefix of it.
bool dot_prefix(std::string_view prefix, std::string_view kind) {
  if (prefix.empty() || kind.substr(0, prefix.size()) != prefix) return false;
  return kind.size() == prefix.size() || kind[prefix.size()] == '.';
}

std::string step_name(const StepTemplate& s) { return s.label.empty() ? s.role : s.label; }

// Indices (into `values`) of one longest strictly increasing subsequence.
std::vector<std::size_t> longest_increasing(const std::vector<std::size_t>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> tails, tail_idx, prev(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto pos = static_cast<std::size_t>(std::lower_bound(tails.begin(), tails.end(), values[i]) - tails.begin());
    if (pos == tails.size()) {
      tails.push_back(values[i]);
      tail_idx.push_back(i);
    } else {
      tails[pos] = values[i];
      tail_idx[pos] = i;
    }
    prev[i] = pos > 0 ? tail_idx[pos - 1] : n;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = tail_idx.empty() ? n : tail_idx.back(); i != n; i = prev[i]) out.push_back(i);
  std::reverse(out.begin(), out.end());
  return out;
}

void check_chain(const std::string& corr, const std::vector<TraceRecord>& chain, DeploymentOption option,
                 Verdict& verdict) {
  const auto& steps = expected_steps(option);
  auto add = [&](ViolationKind kind, std::string step, std::string message) {
    verdict.violations.push_back({kind, corr, std::move(step), std::move(message)});
  };

  for (const auto& r : chain)
    for (const auto& hop : forbidden_hops(option))
      if (glob_match(hop.source, ref_kind(r.source)) && glob_match(hop.target, ref_kind(r.target)))
        add(ViolationKind::ForbiddenHop, r.step_label.empty() ? "-" : r.step_label,
            fmt::format("{} -> {}: {}", r.source, r.target, hop.reason));

  std::vector<bool> used(chain.size(), false);
  std::vector<std::size_t> position(steps.size(), chain.size());
  for (std::size_t s = 0; s < steps.size(); ++s) {
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (used[i] || is_outcome(chain[i]) || !matches(steps[s], chain[i])) continue;
      used[i] = true;
      position[s] = i;
      break;
    }
  }

  std::size_t reached = 0;  // 1 + highest matched step index
  std::vector<std::size_t> matched_steps, matched_pos;
  for (std::size_t s = 0; s < steps.size(); ++s) {
    if (position[s] == chain.size()) continue;
    reached = s + 1;
    matched_steps.push_back(s);
    matched_pos.push_back(position[s]);
  }

  for (std::size_t s = 0; s < reached; ++s)
    if (position[s] == chain.size())
      add(ViolationKind::Missing, step_name(steps[s]),
          fmt::format("expected {} ({} -> {})", steps[s].role, steps[s].source, steps[s].target));

  const auto keep = longest_increasing(matched_pos);
  std::set<std::size_t> in_order;
  for (auto k : keep) in_order.insert(k);
  std::vector<std::string> displaced, roles;
  for (std::size_t k = 0; k < matched_steps.size(); ++k)
    if (!in_order.count(k)) {
      displaced.push_back(step_name(steps[matched_steps[k]]));
      roles.push_back(steps[matched_steps[k]].role);
    }
  if (!displaced.empty())
    add(ViolationKind::Ordering, fmt::format("{}", fmt::join(displaced, ",")),
        fmt::format("out of causal order: {}", fmt::join(roles, "; ")));

  for (std::size_t i = 0; i < chain.size(); ++i)
    if (!used[i] && !is_outcome(chain[i]))
      add(ViolationKind::Unexpected, chain[i].step_label.empty() ? "-" : chain[i].step_label,
          fmt::format("{} -> {} does not belong to the expected sequence", chain[i].source, chain[i].target));

  std::vector<std::size_t> outcomes;
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (is_outcome(chain[i])) outcomes.push_back(i);
  if (outcomes.empty()) {
    add(ViolationKind::Terminal, "outcome", "chain has no outcome record");
    return;
  }
  if (outcomes.size() > 1) add(ViolationKind::Terminal, "outcome", "chain has more than one outcome record");
  const auto& last = chain[outcomes.back()];
  if (outcomes.back() != chain.size() - 1) add(ViolationKind::Terminal, "outcome", "outcome record is not last");
  if (last.detail.rfind("ok", 0) == 0) {
    if (reached != steps.size())
      add(ViolationKind::Terminal, "outcome",
          fmt::format("chain reports success after {} of {} steps", reached, steps.size()));
    else
      ++verdict.scaling_chains;
  } else if (reached == 0 || !dot_prefix(ref_kind(last.source), steps[reached - 1].target)) {
    add(ViolationKind::Terminal, "outcome",
        fmt::format("failure reported by {} does not follow the last step reached", last.source));
  }
}

}  // namespace

const std::vector<StepTemplate>& expected_steps(DeploymentOption option) {
  static const std::map<DeploymentOption, std::vector<StepTemplate>> all{
      {DeploymentOption::Integrated1A, build(DeploymentOption::Integrated1A)},
      {DeploymentOption::Integrated1B, build(DeploymentOption::Integrated1B)},
      {DeploymentOption::Complementary2, build(DeploymentOption::Complementary2)},
  };
  return all.at(option);
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Ordering: return "Ordering";
    case ViolationKind::Missing: return "Missing";
    case ViolationKind::Unexpected: return "Unexpected";
    case ViolationKind::ForbiddenHop: return "ForbiddenHop";
    case ViolationKind::Terminal: return "Terminal";
  }
  return "?";
}

Verdict verify_trace(const std::vector<TraceRecord>& records, DeploymentOption option) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<TraceRecord>> chains;
  for (const auto& r : records) {
    auto [it, inserted] = chains.try_emplace(r.correlation_id);
    if (inserted) order.push_back(r.correlation_id);
    it->second.push_back(r);
  }
  Verdict verdict;
  for (const auto& corr : order) {
    const auto& chain = chains.at(corr);
    const bool closed_loop = std::any_of(chain.begin(), chain.end(), [](const TraceRecord& r) {
      return is_loop_label(r.step_label) || is_outcome(r);
    });
    if (!closed_loop) continue;
    ++verdict.chains_checked;
    check_chain(corr, chain, option, verdict);
  }
  verdict.passed = verdict.violations.empty();
  return verdict;
}

Verdict verify_trace_text(std::string_view text, DeploymentOption option) {
  return verify_trace(parse_trace(text), option);
}

std::string format_verdict(const Verdict& v) {
  std::string out = fmt::format("verdict: {} ({} closed-loop chains, {} scalings, {} violations)\n",
                                v.passed ? "PASS" : "FAIL", v.chains_checked, v.scaling_chains, v.violations.size());
  for (const auto& x : v.violations)
    out += fmt::format("  {} corr={} step={}: {}\n", to_string(x.kind), x.correlation_id, x.step, x.message);
  return out;
}

std::vector<std::string> scaling_chain_ids(const std::vector<TraceRecord>& records) {
  std::vector<std::string> out;
  for (const auto& r : records)
    if (is_outcome(r) && r.detail.rfind("ok", 0) == 0) out.push_back(r.correlation_id);
  return out;
}

std::string explain(const std::vector<TraceRecord>& records, std::string_view correlation_id) {
  std::vector<const TraceRecord*> chain;
  for (const auto& r : records)
    if (r.correlation_id == correlation_id) chain.push_back(&r);
  if (chain.empty())
    throw Error(ErrorCode::PreconditionViolated, fmt::format("no records with correlation '{}'", correlation_id));

  std::map<std::string, std::string> roles;
  for (auto option : {DeploymentOption::Integrated1A, DeploymentOption::Integrated1B, DeploymentOption::Complementary2})
    for (const auto& s : expected_steps(option)) roles.emplace(s.source + "|" + s.target, s.role);
  auto role_of = [&](const TraceRecord& r) -> std::string {
    if (is_outcome(r)) return "Closed-loop outcome";
    for (const auto& [key, role] : roles) {
      const auto bar = key.find('|');
      if (glob_match(key.substr(0, bar), ref_kind(r.source)) && glob_match(key.substr(bar + 1), ref_kind(r.target)))
        return role;
    }
    return "";
  };

  std::string out = fmt::format("chain {} ({} records)\n", correlation_id, chain.size());
  for (const auto* r : chain) {
    out += fmt::format("  t={:<5} ({:>3})  {} -> {}\n", r->tick, r->step_label.empty() ? "-" : r->step_label,
                       r->source, r->target);
    if (auto role = role_of(*r); !role.empty()) out += fmt::format("               {}\n", role);
    if (!r->detail.empty()) out += fmt::format("               {}\n", r->detail);
  }
  return out;
}

}  // namespace zsm
