#include "zsmsim/scenario/parser.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "zsmsim/error.hpp"
#include "zsmsim/fabric/registry.hpp"
#include "zsmsim/infra/nfv.hpp"
#include "zsmsim/payload.hpp"

namespace zsm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void syntax(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::SyntaxError, fmt::format("line {}: {}", line, what));
}

std::int64_t to_int(std::string_view v, std::size_t line) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) syntax(line, fmt::format("'{}' is not an integer", v));
  return out;
}

double to_double(std::string_view v, std::size_t line) {
  try {
    std::size_t used = 0;
    const double out = std::stod(std::string(v), &used);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return out;
  } catch (const std::exception&) {
    syntax(line, fmt::format("'{}' is not a number", v));
  }
}

bool to_bool(std::string_view v, std::size_t line) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  syntax(line, fmt::format("'{}' is not a boolean", v));
}

DeploymentOption to_option(std::string_view v, std::size_t line) {
  try {
    return parse_option(v);
  } catch (const Error& err) {
    syntax(line, err.what());
  }
}

NfTemplateEntry to_nf(std::string_view item, std::size_t line) {
  const auto parts = split(item, ':');
  if (parts.empty() || parts.size() > 2 || parts[0].empty()) syntax(line, fmt::format("bad NF entry '{}'", item));
  NfTemplateEntry e;
  try {
    e.type = parse_nf_type(parts[0]);
    if (parts.size() == 2) e.hint = parse_sharing(parts[1]);
  } catch (const Error& err) {
    syntax(line, err.what());
  }
  return e;
}

enum class Block { Top, Thresholds, Pop, Slice, Load, Forecast };

}  // namespace

ScenarioConfig parse_scenario(std::string_view text) {
  ScenarioConfig cfg;
  Block block = Block::Top;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::set<std::string> seen_top;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.size() > 4 && line.substr(0, 2) == "[[" && line.substr(line.size() - 2) == "]]") {
        const auto name = trim(line.substr(2, line.size() - 4));
        if (name == "pop") {
          block = Block::Pop;
          cfg.pops.emplace_back();
        } else if (name == "slice") {
          block = Block::Slice;
          cfg.slices.emplace_back();
        } else if (name == "load") {
          block = Block::Load;
          cfg.loads.emplace_back();
        } else if (name == "forecast") {
          block = Block::Forecast;
          cfg.forecasts.emplace_back();
        } else {
          syntax(line_no, fmt::format("unknown block [[{}]]", name));
        }
      } else if (line.back() == ']' && line.size() > 2 && line[1] != '[') {
        const auto name = trim(line.substr(1, line.size() - 2));
        if (name != "thresholds") syntax(line_no, fmt::format("unknown section [{}]", name));
        block = Block::Thresholds;
      } else {
        syntax(line_no, fmt::format("malformed header '{}'", line));
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) syntax(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) syntax(line_no, "empty key");
    if (value.empty()) syntax(line_no, fmt::format("key '{}' has no value", key));

    switch (block) {
      case Block::Top:
        if (!seen_top.insert(key).second) syntax(line_no, fmt::format("duplicate key '{}'", key));
        if (key == "option")
          cfg.option = to_option(value, line_no);
        else if (key == "seed")
          cfg.seed = static_cast<std::uint64_t>(to_int(value, line_no));
        else if (key == "max_ticks")
          cfg.max_ticks = to_int(value, line_no);
        else if (key == "shared_pop")
          cfg.shared_pop = value;
        else if (key == "jitter")
          cfg.jitter_ms = to_double(value, line_no);
        else if (key == "shared_vcpu")
          cfg.shared_vnf_resources.vcpu = to_int(value, line_no);
        else if (key == "shared_memory")
          cfg.shared_vnf_resources.memory_mib = to_int(value, line_no);
        else if (key == "shared_storage")
          cfg.shared_vnf_resources.storage_gib = to_int(value, line_no);
        else
          syntax(line_no, fmt::format("unknown key '{}'", key));
        break;
      case Block::Thresholds: {
        auto& t = cfg.thresholds;
        if (key == "h_short")
          t.short_horizon = to_int(value, line_no);
        else if (key == "nwdaf_window")
          t.nwdaf_window = static_cast<std::size_t>(to_int(value, line_no));
        else if (key == "w_base")
          t.baseline_window = static_cast<std::size_t>(to_int(value, line_no));
        else if (key == "k")
          t.confirmations = static_cast<std::size_t>(to_int(value, line_no));
        else if (key == "t_abs")
          t.absolute_rt_ms = to_double(value, line_no);
        else if (key == "u_hi")
          t.util_high = to_double(value, line_no);
        else if (key == "u_target")
          t.util_target = to_double(value, line_no);
        else if (key == "capacity_per_vcpu")
          t.capacity_per_vcpu = to_double(value, line_no);
        else if (key == "base_rt")
          t.base_rt_ms = to_double(value, line_no);
        else
          syntax(line_no, fmt::format("unknown threshold '{}'", key));
        break;
      }
      case Block::Pop: {
        auto& p = cfg.pops.back();
        if (key == "id")
          p.pop_id = value;
        else if (key == "vcpu")
          p.capacity.vcpu = to_int(value, line_no);
        else if (key == "memory")
          p.capacity.memory_mib = to_int(value, line_no);
        else if (key == "storage")
          p.capacity.storage_gib = to_int(value, line_no);
        else
          syntax(line_no, fmt::format("unknown pop key '{}'", key));
        break;
      }
      case Block::Slice: {
        auto& s = cfg.slices.back();
        if (key == "owner")
          s.owner = value;
        else if (key == "nfs") {
          s.nfs.clear();
          for (const auto& item : split(value, ',')) s.nfs.push_back(to_nf(item, line_no));
        } else if (key == "no_mgmt") {
          for (const auto& item : split(value, ',')) {
            const auto type = to_nf(item, line_no).type;
            auto it = std::find_if(s.nfs.begin(), s.nfs.end(), [&](const NfTemplateEntry& e) { return e.type == type; });
            if (it == s.nfs.end()) syntax(line_no, fmt::format("no_mgmt names '{}' which is not in nfs", item));
            it->mgmt_interface = false;
          }
        } else if (key == "pop")
          s.pop = value;
        else if (key == "vnf_vcpu")
          s.vnf_resources.vcpu = to_int(value, line_no);
        else if (key == "vnf_memory")
          s.vnf_resources.memory_mib = to_int(value, line_no);
        else if (key == "vnf_storage")
          s.vnf_resources.storage_gib = to_int(value, line_no);
        else if (key == "vnf_max_vcpu")
          s.vnf_max_resources.vcpu = to_int(value, line_no);
        else if (key == "vnf_max_memory")
          s.vnf_max_resources.memory_mib = to_int(value, line_no);
        else if (key == "vnf_max_storage")
          s.vnf_max_resources.storage_gib = to_int(value, line_no);
        else if (key == "frozen")
          s.frozen = to_bool(value, line_no);
        else
          syntax(line_no, fmt::format("unknown slice key '{}'", key));
        break;
      }
      case Block::Load: {
        auto& l = cfg.loads.back();
        if (key == "nf")
          l.nf_id = value;
        else if (key == "base")
          l.base_load = to_double(value, line_no);
        else if (key == "surge") {
          const auto parts = split(value, ':');
          if (parts.size() != 3) syntax(line_no, "surge must be start:end:multiplier");
          l.surges.push_back({to_int(parts[0], line_no), to_int(parts[1], line_no), to_double(parts[2], line_no)});
        } else
          syntax(line_no, fmt::format("unknown load key '{}'", key));
        break;
      }
      case Block::Forecast: {
        auto& f = cfg.forecasts.back();
        if (key == "tick")
          f.tick = to_int(value, line_no);
        else if (key == "nf")
          f.nf_id = value;
        else if (key == "horizon")
          f.horizon = to_int(value, line_no);
        else
          syntax(line_no, fmt::format("unknown forecast key '{}'", key));
        break;
      }
    }
  }
  validate_scenario(cfg);
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ValidationError, fmt::format("cannot read scenario '{}'", path));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

void validate_scenario(const ScenarioConfig& cfg) {
  auto invalid = [](const std::string& what) { throw Error(ErrorCode::ValidationError, what); };
  if (cfg.pops.empty()) invalid("scenario defines no [[pop]]");
  if (cfg.slices.empty()) invalid("scenario defines no [[slice]]");
  if (cfg.max_ticks <= 0) invalid("max_ticks must be positive");
  if (cfg.jitter_ms < 0) invalid("jitter must not be negative");

  const auto& t = cfg.thresholds;
  if (t.baseline_window == 0 || t.confirmations == 0 || t.nwdaf_window == 0)
    invalid("w_base, k and nwdaf_window must be positive");
  if (t.short_horizon < 1) invalid("h_short must be at least 1");
  if (!(t.capacity_per_vcpu > 0) || !(t.base_rt_ms > 0) || !(t.absolute_rt_ms > 0))
    invalid("capacity_per_vcpu, base_rt and t_abs must be positive");
  if (!(t.util_target > 0) || !(t.util_target < t.util_high) || !(t.util_high <= 1))
    invalid("thresholds need 0 < u_target < u_hi <= 1");

  std::set<std::string> pops;
  for (const auto& p : cfg.pops) {
    if (p.pop_id.empty()) invalid("[[pop]] without id");
    if (!pops.insert(p.pop_id).second) invalid(fmt::format("duplicate pop '{}'", p.pop_id));
    if (!p.capacity.non_negative()) invalid(fmt::format("pop '{}' has negative capacity", p.pop_id));
  }
  if (!cfg.shared_pop.empty() && !pops.count(cfg.shared_pop))
    invalid(fmt::format("shared_pop references unknown pop '{}'", cfg.shared_pop));

  DomainRegistry scratch;
  scratch.register_domain({"cn", DomainLevel::E2EService, "operator", {}, {}, {}});
  SliceCatalog catalog(scratch, "cn", [](DomainLevel level, const std::string& id, const std::string& owner) {
    return ManagementDomain{id, level, owner, {}, {}, {}};
  });
  for (std::size_t i = 0; i < cfg.slices.size(); ++i) {
    const auto& s = cfg.slices[i];
    if (!s.pop.empty() && !pops.count(s.pop))
      invalid(fmt::format("slice {} references unknown pop '{}'", i + 1, s.pop));
    if (!s.vnf_resources.fits_within(s.vnf_max_resources) || !kMinimumProfile.fits_within(s.vnf_resources))
      invalid(fmt::format("slice {} VNF profile {} outside [{}, {}]", i + 1, s.vnf_resources.str(),
                          kMinimumProfile.str(), s.vnf_max_resources.str()));
    try {
      catalog.instantiate_slice(s.nfs, s.owner);
    } catch (const Error& e) {
      invalid(fmt::format("slice {}: {}", i + 1, e.what()));
    }
  }

  std::set<std::string> loaded;
  for (const auto& l : cfg.loads) {
    const auto* nf = catalog.find_nf(l.nf_id);
    if (l.nf_id.empty()) invalid("[[load]] without nf");
    if (!nf) invalid(fmt::format("load references unknown NF '{}'", l.nf_id));
    if (nf->sharing != Sharing::Dedicated)
      invalid(fmt::format("load on '{}': only slice-dedicated NFs are monitored by a closed loop", l.nf_id));
    if (!loaded.insert(l.nf_id).second) invalid(fmt::format("duplicate load for '{}'", l.nf_id));
    if (l.base_load < 0) invalid(fmt::format("load on '{}' is negative", l.nf_id));
    for (const auto& s : l.surges)
      if (s.end <= s.start || s.multiplier < 0)
        invalid(fmt::format("surge on '{}' needs start < end and a non-negative multiplier", l.nf_id));
    if (!l.surges_disjoint()) invalid(fmt::format("surges on '{}' overlap", l.nf_id));
  }
  for (const auto& f : cfg.forecasts) {
    const auto* nf = catalog.find_nf(f.nf_id);
    if (!nf || nf->sharing != Sharing::Dedicated)
      invalid(fmt::format("forecast references unknown NF '{}'", f.nf_id));
    if (f.horizon < 1 || f.tick < 1) invalid(fmt::format("forecast for '{}' needs tick >= 1 and horizon >= 1", f.nf_id));
  }
}

std::string format_scenario(const ScenarioConfig& cfg) {
  std::string out;
  auto line = [&](const std::string& s) {
    out += s;
    out += '\n';
  };
  const auto& t = cfg.thresholds;
  line(fmt::format("option = {}", to_string(cfg.option)));
  line(fmt::format("seed = {}", cfg.seed));
  line(fmt::format("max_ticks = {}", cfg.max_ticks));
  if (!cfg.shared_pop.empty()) line(fmt::format("shared_pop = {}", cfg.shared_pop));
  line(fmt::format("jitter = {}", format_number(cfg.jitter_ms)));
  line(fmt::format("shared_vcpu = {}", cfg.shared_vnf_resources.vcpu));
  line(fmt::format("shared_memory = {}", cfg.shared_vnf_resources.memory_mib));
  line(fmt::format("shared_storage = {}", cfg.shared_vnf_resources.storage_gib));
  line("");
  line("[thresholds]");
  line(fmt::format("h_short = {}", t.short_horizon));
  line(fmt::format("nwdaf_window = {}", t.nwdaf_window));
  line(fmt::format("w_base = {}", t.baseline_window));
  line(fmt::format("k = {}", t.confirmations));
  line(fmt::format("t_abs = {}", format_number(t.absolute_rt_ms)));
  line(fmt::format("u_hi = {}", format_number(t.util_high)));
  line(fmt::format("u_target = {}", format_number(t.util_target)));
  line(fmt::format("capacity_per_vcpu = {}", format_number(t.capacity_per_vcpu)));
  line(fmt::format("base_rt = {}", format_number(t.base_rt_ms)));
  for (const auto& p : cfg.pops) {
    line("");
    line("[[pop]]");
    line(fmt::format("id = {}", p.pop_id));
    line(fmt::format("vcpu = {}", p.capacity.vcpu));
    line(fmt::format("memory = {}", p.capacity.memory_mib));
    line(fmt::format("storage = {}", p.capacity.storage_gib));
  }
  for (const auto& s : cfg.slices) {
    line("");
    line("[[slice]]");
    line(fmt::format("owner = {}", s.owner));
    std::vector<std::string> nfs, no_mgmt;
    for (const auto& e : s.nfs) {
      nfs.push_back(e.hint ? fmt::format("{}:{}", to_string(e.type), to_string(*e.hint)) : std::string(to_string(e.type)));
      if (!e.mgmt_interface) no_mgmt.emplace_back(to_string(e.type));
    }
    line(fmt::format("nfs = {}", fmt::join(nfs, ", ")));
    if (!no_mgmt.empty()) line(fmt::format("no_mgmt = {}", fmt::join(no_mgmt, ", ")));
    if (!s.pop.empty()) line(fmt::format("pop = {}", s.pop));
    line(fmt::format("vnf_vcpu = {}", s.vnf_resources.vcpu));
    line(fmt::format("vnf_memory = {}", s.vnf_resources.memory_mib));
    line(fmt::format("vnf_storage = {}", s.vnf_resources.storage_gib));
    line(fmt::format("vnf_max_vcpu = {}", s.vnf_max_resources.vcpu));
    line(fmt::format("vnf_max_memory = {}", s.vnf_max_resources.memory_mib));
    line(fmt::format("vnf_max_storage = {}", s.vnf_max_resources.storage_gib));
    line(fmt::format("frozen = {}", s.frozen ? "true" : "false"));
  }
  for (const auto& l : cfg.loads) {
    line("");
    line("[[load]]");
    line(fmt::format("nf = {}", l.nf_id));
    line(fmt::format("base = {}", format_number(l.base_load)));
    for (const auto& s : l.surges) line(fmt::format("surge = {}:{}:{}", s.start, s.end, format_number(s.multiplier)));
  }
  for (const auto& f : cfg.forecasts) {
    line("");
    line("[[forecast]]");
    line(fmt::format("tick = {}", f.tick));
    line(fmt::format("nf = {}", f.nf_id));
    line(fmt::format("horizon = {}", f.horizon));
  }
  return out;
}

ScenarioConfig random_scenario(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  auto chance = [&](int percent) { return pick(1, 100) <= percent; };

  ScenarioConfig cfg;
  cfg.option = static_cast<DeploymentOption>(pick(0, 2));
  cfg.seed = seed;
  cfg.max_ticks = 150;
  cfg.jitter_ms = chance(50) ? static_cast<double>(pick(1, 20)) / 4.0 : 0.0;

  const auto pop_count = pick(1, 3);
  for (std::int64_t i = 0; i < pop_count; ++i)
    cfg.pops.push_back({fmt::format("pop-{}", static_cast<char>('a' + i)), {0, 0, 0}});
  cfg.shared_pop = cfg.pops.front().pop_id;

  std::map<std::string, ResourceProfile> demand;
  demand[cfg.shared_pop] = {0, 0, 0};
  const std::vector<NfType> optional_types{NfType::PCF, NfType::NWDAF, NfType::AMF, NfType::NRF, NfType::NSSF};
  const auto slice_count = pick(1, 4);
  std::set<NfType> singletons;
  for (std::int64_t i = 0; i < slice_count; ++i) {
    SliceConfig s;
    s.owner = fmt::format("tenant-{}", i + 1);
    s.pop = cfg.pops[static_cast<std::size_t>(pick(0, pop_count - 1))].pop_id;
    s.nfs.push_back({NfType::SMF, std::nullopt, true});
    for (auto type : optional_types)
      if (chance(60)) s.nfs.push_back({type, std::nullopt, true});
    if (chance(50)) s.nfs.push_back({NfType::UDSF, chance(50) ? Sharing::Dedicated : Sharing::Shared, true});
    s.vnf_resources = {pick(1, 2), 1024, 10};
    s.vnf_max_resources = {s.vnf_resources.vcpu + pick(0, 5), 1024, 10};
    s.frozen = chance(10);
    for (const auto& e : s.nfs) {
      if (classify_nf(e.type, e.hint) == Sharing::Dedicated)
        demand[s.pop] += s.vnf_resources;
      else
        singletons.insert(e.type);
    }
    cfg.slices.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < singletons.size(); ++i) demand[cfg.shared_pop] += cfg.shared_vnf_resources;

  for (auto& p : cfg.pops) {
    const auto& d = demand[p.pop_id];
    p.capacity = {d.vcpu + pick(0, 4), d.memory_mib + 4096, d.storage_gib + 100};
  }

  for (std::size_t i = 0; i < cfg.slices.size(); ++i) {
    LoadProfile l;
    l.nf_id = fmt::format("smf-{}", i + 1);
    const auto vcpu = static_cast<double>(cfg.slices[i].vnf_resources.vcpu);
    l.base_load = static_cast<double>(pick(2, 7)) * vcpu;
    Tick at = pick(25, 60);
    for (int k = 0; k < pick(0, 2); ++k) {
      const Tick len = pick(5, 60);
      l.surges.push_back({at, at + len, 1.0 + static_cast<double>(pick(1, 12)) / 8.0});
      at += len + pick(1, 20);
    }
    cfg.loads.push_back(std::move(l));
    if (chance(30)) cfg.forecasts.push_back({pick(30, 100), fmt::format("smf-{}", i + 1), pick(1, 30)});
  }
  validate_scenario(cfg);
  return cfg;
}

}  // namespace zsm
