#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "zsmsim/error.hpp"
#include "zsmsim/scenario/parser.hpp"
#include "zsmsim/scenario/runner.hpp"
#include "zsmsim/scenario/verifier.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw zsm::Error(zsm::ErrorCode::ValidationError, "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw zsm::Error(zsm::ErrorCode::ValidationError, "cannot write '" + path + "'");
}

int cmd_run(const std::string& scenario, const std::string& trace_out, const std::string& metrics_out,
            std::optional<std::uint64_t> seed, std::optional<zsm::Tick> max_ticks,
            const std::optional<std::string>& option) {
  auto config = zsm::load_scenario_file(scenario);
  if (seed) config.seed = *seed;
  if (max_ticks) config.max_ticks = *max_ticks;
  if (option) config.option = zsm::parse_option(*option);
  zsm::validate_scenario(config);

  const auto out = zsm::run_scenario(config);
  write_file(trace_out, out.trace_text);
  write_file(metrics_out, out.metrics_text);
  for (const auto& d : out.diagnostics) std::cerr << "invariant violation: " << d << '\n';
  std::cerr << "ran " << out.result.ticks << " ticks (" << zsm::to_string(out.result.reason) << "), option "
            << zsm::to_string(config.option) << ", seed " << config.seed << '\n';
  return out.exit_code;
}

int cmd_verify(const std::string& trace, const std::string& option) {
  const auto verdict = zsm::verify_trace_text(read_file(trace), zsm::parse_option(option));
  std::cout << zsm::format_verdict(verdict);
  return verdict.passed ? zsm::kExitOk : zsm::kExitVerification;
}

int cmd_explain(const std::string& trace, const std::string& correlation) {
  std::cout << zsm::explain(zsm::parse_trace(read_file(trace)), correlation);
  return zsm::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-loop network slice management simulator"};
  app.require_subcommand(1);

  std::string scenario, trace_out, metrics_out, trace, option_text, correlation;
  std::optional<std::uint64_t> seed;
  std::optional<zsm::Tick> max_ticks;
  std::optional<std::string> option_override;

  auto* run = app.add_subcommand("run", "Simulate a scenario and write trace and metrics");
  run->add_option("--scenario", scenario, "Scenario document")->required();
  run->add_option("--trace-out", trace_out, "Trace output path")->required();
  run->add_option("--metrics-out", metrics_out, "Metrics output path")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--max-ticks", max_ticks, "Override the tick budget");
  run->add_option("--option", option_override, "Deployment option 1A|1B|2 (overrides the scenario)");

  auto* verify = app.add_subcommand("verify", "Check a trace against an option's step sequence");
  verify->add_option("--trace", trace, "Trace file")->required();
  verify->add_option("--option", option_text, "Deployment option 1A|1B|2")->required();

  auto* explain = app.add_subcommand("explain", "Pretty-print one correlation chain");
  explain->add_option("--trace", trace, "Trace file")->required();
  explain->add_option("--correlation", correlation, "Correlation id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? zsm::kExitOk : zsm::kExitUsage;
  }

  try {
    if (*run) return cmd_run(scenario, trace_out, metrics_out, seed, max_ticks, option_override);
    if (*verify) return cmd_verify(trace, option_text);
    if (*explain) return cmd_explain(trace, correlation);
  } catch (const zsm::Error& e) {
    std::cerr << zsm::to_string(e.code()) << ": " << e.what() << '\n';
    return zsm::kExitUsage;
  }
  return zsm::kExitUsage;
}
