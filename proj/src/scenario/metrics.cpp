#include "zsmsim/scenario/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <fmt/format.h>

#include "zsmsim/engine/world.hpp"
#include "zsmsim/error.hpp"

namespace zsm {

namespace {

constexpr std::string_view kDecisionKinds[] = {"Investigate", "NoAction", "ScaleVnf"};

MetricsSummary empty_summary() {
  MetricsSummary m;
  for (auto kind : kDecisionKinds) m.decisions[std::string(kind)] = 0;
  return m;
}

// Value of `key=` inside a space-separated detail, or empty.
std::string_view field(std::string_view detail, std::string_view key) {
  std::size_t pos = 0;
  while (pos < detail.size()) {
    const auto end = std::min(detail.find(' ', pos), detail.size());
    const auto token = detail.substr(pos, end - pos);
    if (token.size() > key.size() && token.substr(0, key.size()) == key && token[key.size()] == '=')
      return token.substr(key.size() + 1);
    pos = end + 1;
  }
  return {};
}

double to_double(std::string_view text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(text), &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::MalformedTrace, fmt::format("'{}' is not a number", text));
}

std::int64_t to_int(std::string_view text) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw Error(ErrorCode::MalformedTrace, fmt::format("'{}' is not an integer", text));
  return v;
}

std::string_view annotation(std::string_view detail) {
  const auto pos = detail.find(" => ");
  return pos == std::string_view::npos ? std::string_view{} : detail.substr(pos + 4);
}

}  // namespace

MetricsSummary metrics_from_trace(const std::vector<TraceRecord>& records) {
  MetricsSummary m = empty_summary();
  double t_abs = 0.0;
  for (const auto& r : records) {
    const auto target = ref_kind(r.target);
    if (target == "sim.config") {
      t_abs = to_double(field(r.detail, "t_abs"));
      continue;
    }
    if (r.step_label == "1") {
      auto& nf = m.nfs[std::string(field(r.detail, "nf"))];
      const double rt = to_double(field(r.detail, "rt"));
      nf.max_rt_ms = std::max(nf.max_rt_ms, rt);
      if (rt > t_abs) ++nf.over_threshold_ticks;
    } else if (r.step_label == "3") {
      ++m.anomalies;
    } else if (r.step_label == "4") {
      if (auto kind = field(annotation(r.detail), "decision"); !kind.empty()) ++m.decisions[std::string(kind)];
    }
    if (target == "zsm.loop.outcome" && r.detail.rfind("ok", 0) == 0)
      ++m.nfs[std::string(field(r.detail, "nf"))].scale_count;
    if (auto pop = field(r.detail, "pop"); !pop.empty()) {
      const auto alloc = field(r.detail, "alloc_vcpu");
      if (alloc.empty()) continue;
      const auto slash = alloc.find('/');
      if (slash == std::string_view::npos) throw Error(ErrorCode::MalformedTrace, "bad alloc_vcpu field");
      const auto used = to_int(alloc.substr(0, slash));
      const auto cap = to_int(alloc.substr(slash + 1));
      const double ratio = cap == 0 ? 0.0 : static_cast<double>(used) / static_cast<double>(cap);
      // the VIM record detail carries the post-change allocation after the " => "
      auto [it, inserted] = m.pop_peak_allocation.emplace(std::string(pop), ratio);
      if (!inserted) it->second = std::max(it->second, ratio);
    }
  }
  return m;
}

MetricsSummary metrics_from_world(const World& world) {
  MetricsSummary m = empty_summary();
  for (const auto& [nf, stats] : world.nf_stats()) {
    auto& out = m.nfs[nf];
    out.max_rt_ms = stats.max_rt_ms;
    out.over_threshold_ticks = stats.over_threshold_ticks;
  }
  for (const auto& [_, loop] : world.loops()) {
    m.anomalies += loop->tracker().emitted();
    for (const auto& [kind, count] : loop->decision_counts()) m.decisions[std::string(to_string(kind))] += count;
    for (const auto& o : loop->outcomes())
      if (o.scaled) ++m.nfs[o.nf_id].scale_count;
  }
  m.pop_peak_allocation = world.pop_peaks();
  return m;
}

std::string format_metrics(const MetricsSummary& m) {
  std::string out = fmt::format("global\tanomalies\t{}\n", m.anomalies);
  for (const auto& [kind, count] : m.decisions) out += fmt::format("global\tdecisions.{}\t{}\n", kind, count);
  for (const auto& [id, nf] : m.nfs)
    out += fmt::format("nf\t{}\tmax_rt_ms\t{}\tover_threshold_ticks\t{}\tscale_count\t{}\n", id,
                       format_number(nf.max_rt_ms), nf.over_threshold_ticks, nf.scale_count);
  for (const auto& [id, ratio] : m.pop_peak_allocation)
    out += fmt::format("pop\t{}\tpeak_allocation_ratio\t{}\n", id, format_number(ratio));
  return out;
}

MetricsSummary parse_metrics(std::string_view text) {
  MetricsSummary m;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string tok; std::getline(ls, tok, '\t');) f.push_back(tok);
    if (f.size() == 3 && f[0] == "global" && f[1] == "anomalies") {
      m.anomalies = static_cast<std::size_t>(to_int(f[2]));
    } else if (f.size() == 3 && f[0] == "global" && f[1].rfind("decisions.", 0) == 0) {
      m.decisions[f[1].substr(10)] = static_cast<std::size_t>(to_int(f[2]));
    } else if (f.size() == 8 && f[0] == "nf") {
      m.nfs[f[1]] = {to_double(f[3]), static_cast<std::size_t>(to_int(f[5])), static_cast<std::size_t>(to_int(f[7]))};
    } else if (f.size() == 4 && f[0] == "pop") {
      m.pop_peak_allocation[f[1]] = to_double(f[3]);
    } else {
      throw Error(ErrorCode::MalformedTrace, fmt::format("bad metrics line '{}'", line));
    }
  }
  return m;
}

}  // namespace zsm
