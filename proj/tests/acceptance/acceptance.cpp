#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "zsmsim/engine/world.hpp"
#include "zsmsim/error.hpp"
#include "zsmsim/infra/mano.hpp"
#include "zsmsim/infra/nfv.hpp"
#include "zsmsim/scenario/parser.hpp"
#include "zsmsim/scenario/runner.hpp"
#include "zsmsim/scenario/verifier.hpp"
#include "zsmsim/zsm/analytics.hpp"

using namespace zsm;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string scenario_path(const std::string& name) { return std::string(ZSMSIM_SCENARIO_DIR) + "/" + name; }

const std::vector<std::string> kBundled{"option_1a.scn", "option_1b.scn", "option_2.scn", "isolation.scn",
                                        "overlap.scn"};

ScenarioConfig bundled(const std::string& name) { return load_scenario_file(scenario_path(name)); }

// (label, source kind, target kind) of the labelled records of one chain.
using Hop = std::tuple<std::string, std::string, std::string>;

std::vector<Hop> labelled_hops(const std::vector<TraceRecord>& records, const std::string& corr) {
  std::vector<Hop> out;
  for (const auto& r : records)
    if (r.correlation_id == corr && !r.step_label.empty())
      out.emplace_back(r.step_label, std::string(ref_kind(r.source)), std::string(ref_kind(r.target)));
  return out;
}

std::string describe(const std::vector<Hop>& hops) {
  std::string s;
  for (const auto& [label, src, dst] : hops) s += fmt::format("{}{}:{}->{}", s.empty() ? "" : " ", label, src, dst);
  return s;
}

std::vector<Hop> common_prefix() {
  return {{"1", "nf.smf-1", "zsm.domain.data.collection"},
          {"2'", "zsm.domain.data.collection", "zsm.domain.data.storage"},
          {"2", "zsm.domain.data.collection", "zsm.domain.analytics"},
          {"3", "zsm.domain.analytics", "zsm.domain.analytics.anomaly.slice-1"},
          {"4", "zsm.domain.analytics", "zsm.domain.intelligence"},
          {"5", "zsm.domain.intelligence", "zsm.domain.orchestration"}};
}

Result sequence_check(const std::string& name, std::vector<Hop> tail) {
  const auto config = bundled(name);
  const auto out = run_scenario(config);
  const auto records = parse_trace(out.trace_text);
  const auto chains = scaling_chain_ids(records);
  if (chains.size() != 1) return {false, fmt::format("{} scaling chains", chains.size())};
  auto expected = common_prefix();
  expected.insert(expected.end(), tail.begin(), tail.end());
  const auto got = labelled_hops(records, chains.front());
  const auto verdict = verify_trace(records, config.option);
  const bool exact = got == expected;
  return {exact && verdict.passed && out.exit_code == kExitOk,
          fmt::format("hops {} / verifier {}", exact ? "exact" : "differ: " + describe(got),
                      verdict.passed ? "PASS" : "FAIL")};
}

// 1 ---------------------------------------------------------------------------
Result criterion_1a_sequence() {
  auto r = sequence_check("option_1a.scn", {{"6", "zsm.domain.control", "3gpp.nssmf.subnet_provisioning"},
                                            {"7", "3gpp.nssmf", "mano.nfvo.scale_vnf"},
                                            {"8", "mano.nfvo", "mano.vnfm.prepare"},
                                            {"9", "mano.vnfm", "mano.nfvo.scale_resource"},
                                            {"10", "mano.nfvo", "mano.vim.modify_resources"}});
  auto config = bundled("option_1a.scn");
  config.max_ticks = 500;
  const auto start = Clock::now();
  const auto out = run_scenario(config);
  const double secs = seconds_since(start);
  r.pass = r.pass && out.result.ticks == 500 && secs < 5.0;
  r.detail += fmt::format("; 500 ticks in {:.3f} s", secs);
  return r;
}

// 2 ---------------------------------------------------------------------------
Result criterion_option2_sequence() {
  return sequence_check("option_2.scn", {{"6", "zsm.domain.control", "zsm.adapter.nsmf.slice_provisioning"},
                                         {"7", "3gpp.nsmf", "3gpp.nssmf.subnet_provisioning"},
                                         {"8", "3gpp.nssmf", "Os-Ma-nfvo.ScaleVnf"},
                                         {"9", "mano.nfvo", "mano.vnfm.prepare"},
                                         {"9", "mano.vnfm", "mano.nfvo.scale_resource"},
                                         {"9", "mano.nfvo", "mano.vim.modify_resources"}});
}

// 3 ---------------------------------------------------------------------------
Result criterion_adapter_hop() {
  const auto config = bundled("option_1b.scn");
  World w(config);
  w.run_until(nullptr, config.max_ticks);
  const auto& records = w.trace().records();
  std::size_t translations = 0, well_placed = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (ref_kind(records[i].source) != "zsm.adapter.nfvo") continue;
    ++translations;
    const auto& corr = records[i].correlation_id;
    bool after_nssmf = false, before_vnfm = false;
    for (std::size_t j = 0; j < i; ++j)
      after_nssmf = after_nssmf || (records[j].correlation_id == corr && ref_kind(records[j].source) == "3gpp.nssmf");
    for (std::size_t j = i + 1; j < records.size(); ++j)
      before_vnfm =
          before_vnfm || (records[j].correlation_id == corr && ref_kind(records[j].target) == "mano.vnfm.prepare");
    if (after_nssmf && before_vnfm && ref_kind(records[i].target) == "Os-Ma-nfvo.ScaleVnf") ++well_placed;
  }

  const auto& codec = w.fabric().adapter("nfvo-adapter").codec;
  std::mt19937_64 rng(20240601);
  std::size_t identical = 0;
  for (int i = 0; i < 1000; ++i) {
    ScaleRequest req;
    req.request_id = fmt::format("req-{}", rng() % 1000000);
    req.vnf_id = fmt::format("vnf-smf-{}", 1 + rng() % 64);
    req.delta = {static_cast<std::int64_t>(rng() % 33) - 16, static_cast<std::int64_t>(rng() % 8192) - 4096,
                 static_cast<std::int64_t>(rng() % 400) - 200};
    req.origin = static_cast<RequestOrigin>(rng() % 3);
    req.correlation_id = fmt::format("tel-{:06}-smf-{}", rng() % 1000, rng() % 9);
    const auto zsm_side = encode_scale_request(req);
    if (codec.translate_back(codec.translate(zsm_side)) == zsm_side) ++identical;
  }
  return {translations == 1 && well_placed == 1 && identical == 1000,
          fmt::format("{} translation hop(s), {} between NSSMF and VNFM; round trip {}/1000", translations,
                      well_placed, identical)};
}

// 4 ---------------------------------------------------------------------------
Result criterion_convergence() {
  // Oracle from the closed-form model.
  const Thresholds th;
  const double base_rt = 10.0, cap = 10.0;
  const double load_before = 8.0, load_after = 9.0;
  const Tick surge_at = 30;
  const auto rt_of = [&](double load, double vcpu) { return base_rt / (1.0 - load / (vcpu * cap)); };
  const Tick expected_event = surge_at + static_cast<Tick>(th.baseline_window + th.confirmations);
  const std::int64_t expected_delta =
      static_cast<std::int64_t>(std::ceil(load_after / (th.util_target * cap))) - 1;
  const double rt_scaled = rt_of(load_after, 1.0 + static_cast<double>(expected_delta));
  const Tick settle_window = static_cast<Tick>(th.baseline_window + 2 * th.confirmations);

  // Detection rule replayed over the closed-form series.
  Tick rule_tick = -1;
  std::vector<double> series;
  for (Tick t = 1; t <= 200 && rule_tick < 0; ++t) {
    series.push_back(rt_of(t >= surge_at ? load_after : load_before, 1.0));
    const auto n = series.size(), wb = th.baseline_window, k = th.confirmations;
    if (n < wb + k) continue;
    double mean = 0.0, var = 0.0;
    for (auto i = n - wb - k; i < n - k; ++i) mean += series[i] / static_cast<double>(wb);
    for (auto i = n - wb - k; i < n - k; ++i) var += (series[i] - mean) * (series[i] - mean);
    const double limit = mean + 3.0 * std::sqrt(var / static_cast<double>(wb));
    if (std::all_of(series.end() - static_cast<std::ptrdiff_t>(k), series.end(),
                    [&](double v) { return v > limit || v > th.absolute_rt_ms; }))
      rule_tick = t;
  }

  ScenarioConfig c;
  c.option = DeploymentOption::Integrated1A;
  c.max_ticks = 200;
  c.pops.push_back({"pop-a", {16, 65536, 1000}});
  SliceConfig s;
  s.owner = "tenant-a";
  s.pop = "pop-a";
  s.nfs = {{NfType::SMF, {}, true}, {NfType::PCF, {}, true}, {NfType::NWDAF, {}, true},
           {NfType::AMF, {}, true}, {NfType::NRF, {}, true}, {NfType::NSSF, {}, true}};
  c.slices.push_back(s);
  c.loads.push_back({"smf-1", load_before, {{surge_at, 201, load_after / load_before}}});

  World w(c);
  Tick event_tick = -1;
  while (w.now() < c.max_ticks) {
    const auto events = w.tick();
    if (event_tick < 0 && !events.empty()) event_tick = w.now();
  }

  std::int64_t decided_delta = 0;
  Tick step10 = -1;
  std::map<Tick, double> rt;
  for (const auto& r : w.trace().records()) {
    if (r.step_label == "4" && r.detail.find("decision=ScaleVnf") != std::string::npos)
      decided_delta = std::stoll(r.detail.substr(r.detail.find("delta_vcpu=") + 11));
    if (r.step_label == "10") step10 = r.tick;
    if (r.step_label == "1" && r.detail.find("nf=smf-1 ") == 0)
      rt[r.tick] = std::stod(r.detail.substr(r.detail.find("rt=") + 3));
  }
  Tick settled = -1;
  for (Tick t = step10 + 1; step10 > 0 && t <= step10 + settle_window && settled < 0; ++t)
    if (rt.count(t) && rt.at(t) <= th.absolute_rt_ms) settled = t;

  const bool event_ok = event_tick == expected_event;
  const bool delta_ok = decided_delta == expected_delta && expected_delta == 1;
  const bool settle_ok = settled > 0 && std::abs(rt.at(settled) - rt_scaled) < 1e-9;
  return {event_ok && delta_ok && settle_ok,
          fmt::format("event tick {} (expected {}, rule replay {}) {}; delta +{} (expected +{}) {}; rt {:.2f} <= {} at step10+{} "
                      "(window {}) {}; pre-surge rt {:.1f}, surge rt {:.1f}",
                      event_tick, expected_event, rule_tick, event_ok ? "ok" : "MISMATCH", decided_delta, expected_delta,
                      delta_ok ? "ok" : "MISMATCH", settled > 0 ? rt.at(settled) : -1.0, th.absolute_rt_ms,
                      settled - step10, settle_window, settle_ok ? "ok" : "MISMATCH", rt_of(load_before, 1),
                      rt_of(load_after, 1))};
}

// 5 ---------------------------------------------------------------------------
struct ConservationTally {
  std::size_t worlds = 0, ticks = 0, over_capacity = 0, ledger_mismatch = 0, failed_chains = 0,
              failed_ticks_checked = 0, state_changed = 0, internal = 0;
};

void conservation_run(ScenarioConfig config, ConservationTally& tally) {
  World w(config);
  ++tally.worlds;
  while (w.now() < config.max_ticks) {
    const auto before = w.infra().serialize_state();
    w.tick();
    ++tally.ticks;
    std::map<std::string, ResourceProfile> summed;
    for (const auto& [id, vnf] : w.infra().vnfs()) summed[vnf.pop] += vnf.resources;
    for (const auto& [id, pop] : w.infra().pops()) {
      if (!pop.allocated.fits_within(pop.capacity) || !pop.allocated.non_negative()) ++tally.over_capacity;
      if (!(summed[id] == pop.allocated)) ++tally.ledger_mismatch;
    }
    bool any_failed = false, any_scaled = false;
    for (const auto& o : w.outcomes()) {
      if (o.tick != w.now()) continue;
      any_failed = any_failed || o.error.has_value();
      any_scaled = any_scaled || o.scaled;
    }
    if (any_failed && !any_scaled) {
      ++tally.failed_ticks_checked;
      if (w.infra().serialize_state() != before) ++tally.state_changed;
    }
  }
  tally.failed_chains += w.failed_chains();
  tally.internal += w.violations().size();
}

Result criterion_conservation() {
  ConservationTally tally;
  for (const auto& name : kBundled) {
    conservation_run(bundled(name), tally);
    auto frozen = bundled(name);
    frozen.slices.front().frozen = true;
    frozen.max_ticks = std::min<Tick>(frozen.max_ticks, 150);
    conservation_run(frozen, tally);
    auto tight = bundled(name);
    {
      World probe(tight);
      for (auto& pop : tight.pops) pop.capacity.vcpu = probe.infra().pop(pop.pop_id).allocated.vcpu;
    }
    tight.max_ticks = std::min<Tick>(tight.max_ticks, 150);
    conservation_run(tight, tally);
  }
  for (std::uint64_t seed = 1; seed <= 100; ++seed) conservation_run(random_scenario(seed), tally);
  const bool ok = tally.over_capacity == 0 && tally.ledger_mismatch == 0 && tally.state_changed == 0 &&
                  tally.internal == 0 && tally.failed_chains > 0;
  return {ok, fmt::format("{} worlds, {} ticks: {} over-capacity, {} ledger mismatches; {} failed chains, "
                          "{} failure ticks compared, {} state changes; {} internal violations",
                          tally.worlds, tally.ticks, tally.over_capacity, tally.ledger_mismatch,
                          tally.failed_chains, tally.failed_ticks_checked, tally.state_changed, tally.internal)};
}

// 6 ---------------------------------------------------------------------------
Result criterion_isolation() {
  const auto config = bundled("isolation.scn");
  World w(config);
  w.run_until(nullptr, 500);
  const auto& catalog = w.catalog();
  const auto& a = catalog.slice("slice-1");
  const auto& b = catalog.slice("slice-2");
  std::set<std::string> shared;
  std::set_intersection(a.shared_nfs.begin(), a.shared_nfs.end(), b.shared_nfs.begin(), b.shared_nfs.end(),
                        std::inserter(shared, shared.end()));
  const bool sharing = shared.count("amf-shared") && shared.count("nrf-shared");

  std::string probe = "no error";
  try {
    const CallScope scope{w.now(), "probe-isolation", b.slice_id};
    TelemetrySample sample{"smf-1", Metric::ResponseTimeMs, 42.0, w.now()};
    w.fabric().invoke(make_envelope(scope, {b.mgmt_domain, "zsm.domain.intelligence"},
                                    {a.mgmt_domain, kCollection}, "1",
                                    encode_stream({{sample, SampleTag::Analyze}}), "probe"));
  } catch (const Error& e) {
    probe = std::string(to_string(e.code()));
  }

  std::size_t checked = 0, leaks = 0;
  for (const auto& r : w.trace().records()) {
    std::set<std::string> owners;
    if (!r.slice_id.empty()) owners.insert(r.slice_id);
    for (auto pos = r.detail.find("nf="); pos != std::string::npos; pos = r.detail.find("nf=", pos + 3)) {
      const auto end = r.detail.find_first_of(" =", pos + 3);
      const auto owner = catalog.owning_slice(r.detail.substr(pos + 3, end - pos - 3));
      if (!owner.empty()) owners.insert(owner);
    }
    if (owners.empty()) continue;
    ++checked;
    for (const auto& owner : owners) {
      const auto& home = catalog.slice(owner).mgmt_domain;
      for (auto dom : {ref_domain(r.source), ref_domain(r.target)})
        if (dom.substr(0, 9) == "cn-slice-" && dom != home) ++leaks;
    }
    if (owners.size() > 1) ++leaks;
  }
  return {sharing && probe == "AccessDenied" && leaks == 0 && checked > 0,
          fmt::format("shared {{{}}}; cross-slice probe -> {}; {} slice-scoped records over {} ticks, {} leaks",
                      fmt::join(shared, ","), probe, checked, w.now(), leaks)};
}

// 7 ---------------------------------------------------------------------------
Result criterion_scalability() {
  const auto start = Clock::now();
  DomainRegistry reg;
  auto factory = standard_domain_factory(DeploymentOption::Integrated1A);
  reg.register_domain(factory(DomainLevel::E2EService, kE2eDomain, "operator"));
  reg.register_domain(factory(DomainLevel::E2EService, kCnDomain, "operator"));
  SliceCatalog catalog(reg, kCnDomain, factory);
  const std::vector<NfTemplateEntry> tpl{{NfType::SMF, {}, true}, {NfType::PCF, {}, true},
                                         {NfType::NWDAF, {}, true}, {NfType::AMF, {}, true},
                                         {NfType::NRF, {}, true},   {NfType::NSSF, {}, true}};
  std::map<std::string, std::uint64_t> hashes;
  std::size_t changed = 0, comparisons = 0;
  for (int i = 0; i < 50; ++i) {
    for (const auto& id : reg.order()) hashes.emplace(id, reg.descriptor_hash(id));
    catalog.instantiate_slice(tpl, fmt::format("tenant-{}", i));
    for (const auto& [id, h] : hashes) {
      ++comparisons;
      if (reg.descriptor_hash(id) != h) ++changed;
    }
  }
  const double secs = seconds_since(start);
  const auto specific = reg.count(DomainLevel::SliceSpecific);
  const auto shared = reg.count(DomainLevel::SharedNFs);
  const auto over = reg.count(DomainLevel::OverarchingNFs);
  return {specific == 50 && shared == 1 && over == 1 && changed == 0 && reg.is_forest() && secs < 10.0,
          fmt::format("SliceSpecific {}, SharedNFs {}, OverarchingNFs {}; {} hash comparisons, {} changed; {:.3f} s",
                      specific, shared, over, comparisons, changed, secs)};
}

// 8 ---------------------------------------------------------------------------
Result criterion_determinism() {
  std::size_t identical = 0, differing = 0, same_verdicts = 0;
  for (const auto& name : kBundled) {
    const auto config = bundled(name);
    if (run_scenario(config).trace_text == run_scenario(config).trace_text) ++identical;
    auto jittered = config;
    jittered.jitter_ms = std::max(config.jitter_ms, 1.0);
    auto reseeded = jittered;
    reseeded.seed = config.seed + 1000;
    const auto x = run_scenario(jittered), y = run_scenario(reseeded);
    if (x.trace_text != y.trace_text) ++differing;
    if (verify_trace_text(x.trace_text, config.option).same_outcome(verify_trace_text(y.trace_text, config.option)))
      ++same_verdicts;
  }
  const auto n = kBundled.size();
  return {identical == n && differing == n && same_verdicts == n,
          fmt::format("same seed identical {}/{}; reseeded with jitter: differ {}/{}, same verdict {}/{}", identical,
                      n, differing, n, same_verdicts, n)};
}

// 9 ---------------------------------------------------------------------------
Result criterion_overlap_split() {
  std::size_t localized = 0, management = 0, forecasts = 0, misroutes = 0, expected_forecasts = 0,
              udsf_held = 0;
  for (const auto& name : kBundled) {
    const auto config = bundled(name);
    World w(config);
    w.run_until(nullptr, config.max_ticks);
    expected_forecasts += config.forecasts.size();
    for (const auto& [nf, _] : w.catalog().nfs())
      if (const auto* store = w.udsf(nf)) udsf_held += store->size();
    for (const auto& r : w.trace().records()) {
      const auto kind = ref_kind(r.target);
      const bool loc = r.detail.find("class=Localized") != std::string::npos;
      const bool mgmt = r.detail.find("class=Management") != std::string::npos;
      if (loc) ++localized;
      if (mgmt) ++management;
      if (loc && kind != "cp.udsf.storage") ++misroutes;
      if (mgmt && kind != "zsm.domain.data.storage") ++misroutes;
      if (kind == "cp.udsf.storage" && !loc) ++misroutes;
      if (kind == "zsm.domain.data.storage" && !mgmt) ++misroutes;
      if (kind == "cp.nwdaf.forecast" || kind == "zsm.domain.analytics.forecast") {
        ++forecasts;
        const auto h = std::stoll(r.detail.substr(r.detail.find("horizon=") + 8));
        const bool short_term = h <= 10;
        const bool nwdaf = kind == "cp.nwdaf.forecast" && r.detail.find("provider=Nwdaf") != std::string::npos;
        const bool zsm = kind == "zsm.domain.analytics.forecast" &&
                         r.detail.find("provider=ZsmAnalytics") != std::string::npos;
        if (short_term ? !nwdaf : !zsm) ++misroutes;
      }
    }
  }
  return {misroutes == 0 && localized > 0 && management > 0 && forecasts == expected_forecasts &&
              forecasts > 0 && udsf_held == localized,
          fmt::format("{} Localized (UDSF holds {}), {} Management, {}/{} forecasts; {} misroutes", localized,
                      udsf_held, management, forecasts, expected_forecasts, misroutes)};
}

// 10 --------------------------------------------------------------------------
Result criterion_verifier_sensitivity() {
  std::size_t deletions = 0, detected = 0, chains = 0;
  bool baseline_ok = true;
  for (const auto& name : kBundled) {
    const auto config = bundled(name);
    const auto records = parse_trace(run_scenario(config).trace_text);
    baseline_ok = baseline_ok && verify_trace(records, config.option).passed;
    for (const auto& corr : scaling_chain_ids(records)) {
      ++chains;
      for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].correlation_id != corr) continue;
        auto mutated = records;
        mutated.erase(mutated.begin() + static_cast<std::ptrdiff_t>(i));
        ++deletions;
        if (!verify_trace(mutated, config.option).violations.empty()) ++detected;
      }
    }
  }
  return {baseline_ok && chains > 0 && deletions > 0 && detected == deletions,
          fmt::format("{} scaling chains, {}/{} single-record deletions detected", chains, detected, deletions)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"Option 1A step sequence", criterion_1a_sequence},
      {"Option 2 step sequence", criterion_option2_sequence},
      {"Option 1B adapter hop", criterion_adapter_hop},
      {"closed-loop convergence", criterion_convergence},
      {"resource conservation", criterion_conservation},
      {"slice isolation", criterion_isolation},
      {"domain growth", criterion_scalability},
      {"determinism", criterion_determinism},
      {"overlap-split routing", criterion_overlap_split},
      {"verifier sensitivity", criterion_verifier_sensitivity},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, fmt::format("threw: {}", e.what())};
    }
    if (!r.pass) ++failures;
    fmt::print("{} {:>2} {}: {}\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, r.detail);
    std::fflush(stdout);
  }
  fmt::print("{}/{} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
