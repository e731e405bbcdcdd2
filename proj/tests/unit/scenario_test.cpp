#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "zsmsim/scenario/metrics.hpp"
#include "zsmsim/scenario/parser.hpp"
#include "zsmsim/scenario/runner.hpp"
#include "zsmsim/scenario/verifier.hpp"

using namespace zsm;
using zsmtest::code_of;

namespace {

constexpr const char* kMinimal = R"(
[[pop]]
id = pop-a
vcpu = 16

[[slice]]
nfs = SMF, PCF
)";

std::string error_text(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

RunOutput run_bundled(const std::string& name, Tick max_ticks = 120) {
  auto config = zsmtest::bundled_scenario(name);
  config.max_ticks = max_ticks;
  return run_scenario(config);
}

std::vector<std::size_t> chain_indices(const std::vector<TraceRecord>& records, const std::string& corr) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].correlation_id == corr) out.push_back(i);
  return out;
}

}  // namespace

TEST_CASE("minimal scenario takes every default") {
  const auto c = parse_scenario(kMinimal);
  const Thresholds defaults;
  CHECK(c.option == DeploymentOption::Integrated1A);
  CHECK(c.thresholds.short_horizon == defaults.short_horizon);
  CHECK(c.thresholds.baseline_window == 20);
  CHECK(c.thresholds.confirmations == 3);
  CHECK(c.thresholds.absolute_rt_ms == 100.0);
  CHECK(c.thresholds.util_high == 0.8);
  CHECK(c.thresholds.util_target == 0.5);
  CHECK(c.thresholds.capacity_per_vcpu == 10.0);
  CHECK(c.thresholds.base_rt_ms == 10.0);
  CHECK(c.slices.size() == 1);
  CHECK(c.pops.front().capacity.vcpu == 16);
}

TEST_CASE("parser options and errors") {
  CHECK(parse_scenario(std::string("option = 2\n") + kMinimal).option == DeploymentOption::Complementary2);
  CHECK(parse_scenario(std::string("option = 1b\n") + kMinimal).option == DeploymentOption::Integrated1B);

  const std::string dangling = std::string(kMinimal) + "[[load]]\nnf = smf-9\nbase = 3\n";
  CHECK(code_of([&] { parse_scenario(dangling); }) == ErrorCode::ValidationError);
  CHECK(error_text([&] { parse_scenario(dangling); }).find("smf-9") != std::string::npos);

  const std::string broken = std::string(kMinimal) + "this line has no equals sign\n";
  CHECK(code_of([&] { parse_scenario(broken); }) == ErrorCode::SyntaxError);
  CHECK(error_text([&] { parse_scenario(broken); }).find("line 8") != std::string::npos);

  CHECK(code_of([] { parse_scenario("option = 3\n"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_scenario("[[pop]]\nid = p\nvcpu = many\n"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_scenario("[[slice]]\nnfs = SMF\npop = nowhere\n[[pop]]\nid = p\nvcpu = 4\n"); }) ==
        ErrorCode::ValidationError);
  CHECK(code_of([] { parse_scenario("[[pop]]\nid = p\nvcpu = 4\n[[slice]]\nnfs = SMF, UDM\n"); }) ==
        ErrorCode::ValidationError);
  const std::string overlapping =
      std::string(kMinimal) + "[[load]]\nnf = smf-1\nbase = 1\nsurge = 10:20:2\nsurge = 15:30:2\n";
  CHECK(code_of([&] { parse_scenario(overlapping); }) == ErrorCode::ValidationError);
  CHECK(code_of([] { load_scenario_file("/nonexistent/x.scn"); }).has_value());
}

TEST_CASE("scenario documents round trip through the formatter") {
  for (const char* name : {"option_1a.scn", "option_1b.scn", "option_2.scn"}) {
    const auto c = zsmtest::bundled_scenario(name);
    const auto text = format_scenario(c);
    CHECK(format_scenario(parse_scenario(text)) == text);
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto c = random_scenario(seed);
    CHECK_NOTHROW(validate_scenario(c));
    const auto text = format_scenario(c);
    CHECK(format_scenario(parse_scenario(text)) == text);
  }
}

TEST_CASE("reference traces pass verification with one scaling chain") {
  for (const char* name : {"option_1a.scn", "option_1b.scn", "option_2.scn"}) {
    const auto out = run_bundled(name);
    REQUIRE(out.exit_code == kExitOk);
    const auto option = zsmtest::bundled_scenario(name).option;
    const auto verdict = verify_trace_text(out.trace_text, option);
    CAPTURE(format_verdict(verdict));
    CHECK(verdict.passed);
    CHECK(verdict.scaling_chains == 1);
    CHECK(scaling_chain_ids(parse_trace(out.trace_text)).size() == 1);
  }
}

TEST_CASE("expected sequences per option") {
  auto labels = [](DeploymentOption o) {
    std::vector<std::string> out;
    for (const auto& s : expected_steps(o))
      if (!s.label.empty()) out.push_back(s.label);
    return out;
  };
  const std::vector<std::string> full{"1", "2'", "2", "3", "4", "5", "6", "7", "8", "9", "10"};
  CHECK(labels(DeploymentOption::Integrated1A) == full);
  CHECK(labels(DeploymentOption::Integrated1B) == full);
  CHECK(labels(DeploymentOption::Complementary2) ==
        std::vector<std::string>{"1", "2'", "2", "3", "4", "5", "6", "7", "8", "9", "9", "9"});
}

TEST_CASE("swapping steps 7 and 8 yields one ordering violation") {
  auto records = parse_trace(run_bundled("option_1a.scn").trace_text);
  const auto corr = scaling_chain_ids(records).front();
  std::size_t i7 = 0, i8 = 0;
  for (auto i : chain_indices(records, corr)) {
    if (records[i].step_label == "7") i7 = i;
    if (records[i].step_label == "8") i8 = i;
  }
  std::swap(records[i7], records[i8]);
  const auto verdict = verify_trace(records, DeploymentOption::Integrated1A);
  REQUIRE(verdict.violations.size() == 1);
  CHECK(verdict.violations.front().kind == ViolationKind::Ordering);
  CHECK(verdict.violations.front().step == "7,8");
}

TEST_CASE("an Option 2 trace fails the 1A expectation at steps 6 to 8") {
  const auto verdict = verify_trace_text(run_bundled("option_2.scn").trace_text, DeploymentOption::Integrated1A);
  CHECK_FALSE(verdict.passed);
  std::set<std::string> steps;
  for (const auto& v : verdict.violations) steps.insert(v.step);
  for (const char* s : {"6", "7", "8"}) CHECK(steps.count(s) == 1);
  CHECK(std::any_of(verdict.violations.begin(), verdict.violations.end(),
                    [](const Violation& v) { return v.kind == ViolationKind::ForbiddenHop; }));
}

TEST_CASE("deleting any record of a scaling chain is detected") {
  for (const char* name : {"option_1a.scn", "option_1b.scn", "option_2.scn"}) {
    const auto option = zsmtest::bundled_scenario(name).option;
    const auto records = parse_trace(run_bundled(name).trace_text);
    const auto corr = scaling_chain_ids(records).front();
    const auto idx = chain_indices(records, corr);
    REQUIRE(idx.size() >= expected_steps(option).size());
    for (auto i : idx) {
      auto mutated = records;
      mutated.erase(mutated.begin() + static_cast<std::ptrdiff_t>(i));
      CAPTURE(format_record(records[i]));
      CHECK_FALSE(verify_trace(mutated, option).passed);
    }
  }
}

TEST_CASE("a frozen subnet yields a verified failure chain and untouched state") {
  auto config = zsmtest::bundled_scenario("option_1a.scn");
  config.slices[0].frozen = true;
  config.max_ticks = 80;
  World w(config);
  const auto before = w.infra().serialize_state();
  w.run_until(nullptr, 80);
  CHECK(w.completed_scalings() == 0);
  CHECK(w.failed_chains() >= 1);
  CHECK(w.infra().serialize_state() == before);
  CHECK(w.violations().empty());
  const auto outcome = w.outcomes().front();
  CHECK(outcome.error == ErrorCode::NotPossible);
  CHECK(outcome.stopped_at == "3gpp.nssmf");
  const auto verdict = verify_trace(w.trace().records(), config.option);
  CAPTURE(format_verdict(verdict));
  CHECK(verdict.passed);
  CHECK(verdict.scaling_chains == 0);
}

TEST_CASE("malformed traces and unknown chains") {
  CHECK(code_of([] { verify_trace_text("1\t-\tonly-three\n", DeploymentOption::Integrated1A); }) ==
        ErrorCode::MalformedTrace);
  const auto records = parse_trace(run_bundled("option_1b.scn", 40).trace_text);
  CHECK(code_of([&] { explain(records, "no-such-chain"); }) == ErrorCode::PreconditionViolated);
  const auto text = explain(records, scaling_chain_ids(records).front());
  CHECK(text.find("( 10)") != std::string::npos);
  CHECK(text.find("Os-Ma-nfvo.ScaleVnf") != std::string::npos);
}

TEST_CASE("metrics recomputed from the trace equal the emitted metrics") {
  for (const char* name : {"option_1a.scn", "option_1b.scn", "option_2.scn"}) {
    const auto out = run_bundled(name, 200);
    const auto recomputed = metrics_from_trace(parse_trace(out.trace_text));
    CHECK(recomputed == out.metrics);
    CHECK(parse_metrics(out.metrics_text) == out.metrics);
    CHECK(format_metrics(recomputed) == out.metrics_text);
    CHECK(out.metrics.anomalies == 1);
    CHECK(out.metrics.decisions.at("ScaleVnf") == 1);
    CHECK(out.metrics.nfs.at("smf-1").scale_count == 1);
    CHECK(out.metrics.nfs.at("smf-1").over_threshold_ticks == 3);
  }
}

TEST_CASE("random scenarios run clean") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto config = random_scenario(seed);
    const auto out = run_scenario(config);
    CAPTURE(seed);
    CHECK(out.exit_code == kExitOk);
    CHECK(out.diagnostics.empty());
    CHECK(verify_trace_text(out.trace_text, config.option).passed);
  }
}
