#include "zsmsim/engine/world.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "zsmsim/error.hpp"

namespace zsm {

namespace {

constexpr const char* kNssmfService = "3gpp.nssmf";
constexpr const char* kNsmfService = "3gpp.nsmf";
constexpr const char* kNfvoAdapterCapability = "zsm.adapter.nfvo.scale_vnf";
constexpr const char* kNsmfAdapterCapability = "zsm.adapter.nsmf.slice_provisioning";
constexpr const char* kOsMaScaleVnf = "Os-Ma-nfvo.ScaleVnf";
constexpr const char* kManoScaleVnf = "mano.nfvo.scale_vnf";

void add_mano_services(ManagementDomain& d, bool service_based) {
  auto add = [&](const char* cap, const char* svc) { d.services.push_back({cap, svc, d.domain_id, service_based}); };
  add("mano.nfvo.validate", "mano.nfvo");
  add("mano.nfvo.feasibility", "mano.nfvo");
  add("mano.nfvo.scale_resource", "mano.nfvo");
  add("mano.vnfm.prepare", "mano.vnfm");
  add("mano.vim.modify_resources", "mano.vim");
  add("mano.vim.inventory", "mano.vim");
}

void add_3gpp_services(ManagementDomain& d) {
  for (const char* cap : {kNssmfCapability, kNssmfFaultCapability}) d.services.push_back({cap, kNssmfService, d.domain_id});
  for (const char* cap : {kNsmfCapability, kNsmfNotifyCapability}) d.services.push_back({cap, kNsmfService, d.domain_id});
}

std::string slice_of_domain(const std::string& domain_id) {
  return domain_id.rfind("cn-", 0) == 0 ? domain_id.substr(3) : domain_id;
}

double allocation_ratio(const NfviPop& pop) {
  return pop.capacity.vcpu == 0 ? 0.0 : static_cast<double>(pop.allocated.vcpu) / static_cast<double>(pop.capacity.vcpu);
}

}  // namespace

std::string virtualization_domain(const std::string& pop_id) { return "virt-" + pop_id; }

DomainFactory standard_domain_factory(DeploymentOption option) {
  return [option](DomainLevel level, const std::string& id, const std::string& owner) {
    ManagementDomain d;
    d.domain_id = id;
    d.level = level;
    d.owner = owner;
    d.exposure_policy.allow_domain(id, "*");
    auto add = [&](std::string cap, std::string svc, bool service_based = true) {
      d.services.push_back({std::move(cap), std::move(svc), id, service_based});
    };
    switch (level) {
      case DomainLevel::SliceSpecific:
        add(kCollection, kCollection);
        add(kStorage, kStorage);
        add(kAnalytics, kAnalytics);
        add(kForecast, kAnalytics);
        add(kAnomalyTopicPrefix + slice_of_domain(id), kAnalytics);
        add(kIntelligence, kIntelligence);
        add(kOrchestration, kOrchestration);
        add(kControlLifecycle, kControl);
        add(kNwdafForecast, "cp.nwdaf");
        add(kPcfPolicy, "cp.pcf");
        add(kUdsfStorage, "cp.udsf");
        if (option == DeploymentOption::Complementary2)
          d.exposure_policy.allow_domain(k3gppDomain, std::string(kAnomalyTopicPrefix) + "*");
        break;
      case DomainLevel::SharedNFs:
      case DomainLevel::OverarchingNFs:
        add(kUdsfStorage, "cp.udsf");
        d.exposure_policy.allow_domain("cn-*", "cp.udsf.*");
        break;
      case DomainLevel::E2EService:
        if (id == kE2eDomain) {
          add("zsm.e2e.service_management", "zsm.e2e");
          break;
        }
        if (option != DeploymentOption::Complementary2) add_3gpp_services(d);
        if (option == DeploymentOption::Integrated1B) add(kNfvoAdapterCapability, "zsm.adapter.nfvo");
        if (option == DeploymentOption::Complementary2) add(kNsmfAdapterCapability, "zsm.adapter.nsmf");
        d.exposure_policy.allow_domain("cn-*", "3gpp.nssmf.*");
        d.exposure_policy.allow_domain("cn-*", "zsm.adapter.*");
        break;
      case DomainLevel::Virtualization:
        if (id == kManoDomain) {
          add(kOsMaScaleVnf, "mano.nfvo", false);
          add_mano_services(d, false);
          d.exposure_policy.allow_domain(kCnDomain, "Os-Ma-nfvo.*");
          d.exposure_policy.allow_domain(k3gppDomain, "Os-Ma-nfvo.*");
        } else {
          add(kManoScaleVnf, "mano.nfvo");
          add_mano_services(d, true);
          d.exposure_policy.allow_domain(kCnDomain, "mano.nfvo.*");
        }
        break;
      case DomainLevel::External3GPP:
        add_3gpp_services(d);
        d.exposure_policy.allow_domain(kCnDomain, kNsmfCapability);
        d.exposure_policy.allow_domain("cn-*", kNsmfNotifyCapability);
        break;
    }
    return d;
  };
}

void Scheduler::schedule(Tick tick, std::string key, std::function<void()> action) {
  queue_.emplace(std::make_tuple(tick, std::move(key), seq_++), std::move(action));
}

std::size_t Scheduler::run_due(Tick now) {
  std::size_t ran = 0;
  while (!queue_.empty() && std::get<0>(queue_.begin()->first) <= now) {
    auto action = std::move(queue_.begin()->second);
    queue_.erase(queue_.begin());
    action();
    ++ran;
  }
  return ran;
}

std::string_view to_string(StopReason reason) {
  return reason == StopReason::Predicate ? "predicate" : "max_ticks";
}

World::World(ScenarioConfig config, KernelMode mode) : config_(std::move(config)), mode_(mode) {
  clock_.seed = config_.seed;
  if (config_.pops.empty()) throw Error(ErrorCode::ValidationError, "scenario defines no PoP");
  if (config_.shared_pop.empty()) config_.shared_pop = config_.pops.front().pop_id;
  build_domains();
  build_slices();
  build_infrastructure();
  build_services();
  record_initial_state();
}

void World::build_domains() {
  auto factory = standard_domain_factory(config_.option);
  auto& reg = fabric_.registry();
  reg.register_domain(factory(DomainLevel::E2EService, kCnDomain, "operator"));
  auto e2e = factory(DomainLevel::E2EService, kE2eDomain, "operator");
  e2e.children = {kCnDomain};
  reg.register_domain(std::move(e2e));
  if (config_.option == DeploymentOption::Integrated1A) {
    for (const auto& pop : config_.pops) {
      const auto id = virtualization_domain(pop.pop_id);
      reg.register_domain(factory(DomainLevel::Virtualization, id, "operator"));
      reg.attach_child(kCnDomain, id);
    }
  } else {
    reg.register_domain(factory(DomainLevel::Virtualization, kManoDomain, "operator"));
  }
  if (config_.option == DeploymentOption::Complementary2)
    reg.register_domain(factory(DomainLevel::External3GPP, k3gppDomain, "operator"));
}

void World::build_slices() {
  catalog_ = std::make_unique<SliceCatalog>(fabric_.registry(), kCnDomain, standard_domain_factory(config_.option));
  for (const auto& s : config_.slices) catalog_->instantiate_slice(s.nfs, s.owner);
}

void World::build_infrastructure() {
  for (const auto& pop : config_.pops) infra_.add_pop(pop.pop_id, pop.capacity);
  for (const auto& [nf_id, nf] : catalog_->nfs()) {
    VnfInstance vnf;
    vnf.vnf_id = nf.hosting_vnf;
    vnf.hosted_nf = nf_id;
    if (nf.sharing == Sharing::Dedicated) {
      const auto& slice = catalog_->owning_slice(nf_id);
      const auto index = static_cast<std::size_t>(
          std::find(catalog_->slice_order().begin(), catalog_->slice_order().end(), slice) -
          catalog_->slice_order().begin());
      const auto& sc = config_.slices.at(index);
      vnf.pop = sc.pop.empty() ? config_.pops.front().pop_id : sc.pop;
      vnf.resources = sc.vnf_resources;
      vnf.max_resources = sc.vnf_max_resources;
    } else {
      vnf.pop = config_.shared_pop;
      vnf.resources = config_.shared_vnf_resources;
      vnf.max_resources = config_.shared_vnf_resources;
    }
    if (!infra_.has_pop(vnf.pop))
      throw Error(ErrorCode::ValidationError, fmt::format("VNF '{}' references unknown PoP '{}'", vnf.vnf_id, vnf.pop));
    try {
      infra_.add_vnf(std::move(vnf));
    } catch (const Error& e) {
      throw Error(ErrorCode::ValidationError, fmt::format("cannot place VNFs: {}", e.what()));
    }
  }
}

void World::build_services() {
  const auto option = config_.option;
  const bool integrated = option == DeploymentOption::Integrated1A;
  const bool complementary = option == DeploymentOption::Complementary2;

  Mano::DomainResolver resolver = integrated ? Mano::DomainResolver([](const std::string& pop) {
    return virtualization_domain(pop);
  })
                                             : Mano::DomainResolver([](const std::string&) {
                                                 return std::string(kManoDomain);
                                               });
  ManoStepLabels labels = complementary ? ManoStepLabels{"9", "9", "9"} : ManoStepLabels{};
  mano_ = std::make_unique<Mano>(infra_, fabric_.trace(), resolver, labels);

  auto nfvo_handler = [this](std::optional<FieldCodec> codec) {
    return [this, codec](const MessageEnvelope& env) {
      const Payload in = codec ? codec->translate_back(env.payload) : env.payload;
      const auto request = decode_scale_request(in, env.correlation_id);
      const auto outcome =
          mano_->nfvo_scale_vnf(request, {env.tick, env.correlation_id, env.slice_id, env.target.domain});
      Payload out = encode_scale_outcome(outcome);
      if (codec) out = codec->translate(out);
      out.set(kSummaryField, fmt::format("vcpu={}", outcome.resources.vcpu));
      return out;
    };
  };
  if (integrated) {
    for (const auto& pop : config_.pops)
      fabric_.bind({virtualization_domain(pop.pop_id), kManoScaleVnf}, nfvo_handler(std::nullopt));
  } else {
    fabric_.bind({kManoDomain, kOsMaScaleVnf}, nfvo_handler(os_ma_nfvo_codec()));
  }

  const std::string mgmt_domain = complementary ? k3gppDomain : kCnDomain;
  NssmfConfig nc;
  nc.service = {mgmt_domain, kNssmfService};
  nc.binding = integrated ? NfvoBinding::IntegratedInvoke : NfvoBinding::OsMaNfvo;
  if (integrated) {
    nc.nfvo_target = [this](const std::string& vnf_id) {
      const auto* vnf = infra_.find_vnf(vnf_id);
      return CapabilityRef{virtualization_domain(vnf ? vnf->pop : std::string("unknown")), kManoScaleVnf};
    };
  } else {
    nc.nfvo_target = [](const std::string&) { return CapabilityRef{kManoDomain, kOsMaScaleVnf}; };
  }
  if (option == DeploymentOption::Integrated1B) nc.adapter = CapabilityRef{kCnDomain, kNfvoAdapterCapability};
  if (complementary) {
    nc.dispatch_label = "8";
    nc.native_codec = os_ma_nfvo_codec();
    fabric_.grant_native(nc.service, kOsMaScaleVnf);
  }
  nssmf_ = std::make_unique<Nssmf>(fabric_, nc);
  for (std::size_t i = 0; i < config_.slices.size(); ++i) {
    const auto& slice_id = catalog_->slice_order()[i];
    nssmf_->manage_subnet(slice_id);
    nssmf_->set_frozen(slice_id, config_.slices[i].frozen);
  }
  nssmf_->bind_handlers();

  NsmfConfig mc;
  mc.service = {mgmt_domain, kNsmfService};
  mc.nssmf = {mgmt_domain, kNssmfCapability};
  mc.external_exposure = complementary;
  if (complementary) mc.exposure_codec = nsmf_exposure_codec();
  nsmf_ = std::make_unique<Nsmf>(fabric_, mc);
  for (const auto& slice_id : catalog_->slice_order()) nsmf_->manage_slice(slice_id);
  nsmf_->bind_handlers();

  if (option == DeploymentOption::Integrated1B)
    fabric_.register_adapter({"nfvo-adapter", kNfvoAdapterCapability, kOsMaScaleVnf, kManoDomain, os_ma_nfvo_codec()},
                             kCnDomain, "zsm.adapter.nfvo");
  if (complementary) {
    fabric_.register_adapter(
        {"nsmf-adapter", kNsmfAdapterCapability, kNsmfCapability, k3gppDomain, nsmf_exposure_codec()}, kCnDomain,
        "zsm.adapter.nsmf");
    Egmf({{{kNsmfCapability, kCnDomain}, {kNsmfNotifyCapability, "cn-*"}}}).install(fabric_, k3gppDomain);
  }

  LoopSettings settings;
  settings.option = option;
  settings.thresholds = config_.thresholds;
  settings.control_target = complementary ? CapabilityRef{kCnDomain, kNsmfAdapterCapability}
                                          : CapabilityRef{kCnDomain, kNssmfCapability};
  for (const auto& slice_id : catalog_->slice_order()) {
    const auto& domain = catalog_->slice(slice_id).mgmt_domain;
    auto loop = std::make_unique<DomainServices>(fabric_, *catalog_, infra_, domain, slice_id, settings);
    loop->bind_handlers();
    loops_.emplace(domain, std::move(loop));
  }
  if (complementary && !catalog_->slice_order().empty())
    nsmf_->subscribe_analytics(std::string(kAnomalyTopicPrefix) + "*");

  for (const auto& [nf_id, nf] : catalog_->nfs()) {
    if (nf.nf_type != NfType::UDSF) continue;
    auto& store = udsf_.emplace(nf_id, UdsfStore{}).first->second;
    fabric_.bind({catalog_->managing_domain(nf_id), kUdsfStorage}, [&store](const MessageEnvelope& env) {
      const auto data_class =
          env.payload.find("class").value_or("Management") == "Localized" ? DataClass::Localized : DataClass::Management;
      const auto location = store.store(decode_sample(env.payload), data_class);
      Payload out;
      out.set(kSummaryField, fmt::format("location={}", to_string(location)));
      return out;
    });
  }

  for (const auto& load : config_.loads) {
    const auto* nf = catalog_->find_nf(load.nf_id);
    if (!nf) throw Error(ErrorCode::ValidationError, fmt::format("load references unknown NF '{}'", load.nf_id));
    if (nf->sharing != Sharing::Dedicated)
      throw Error(ErrorCode::ValidationError,
                  fmt::format("load on '{}': only slice-dedicated NFs are monitored by a closed loop", load.nf_id));
    monitored_.push_back(&load);
  }
  std::sort(monitored_.begin(), monitored_.end(),
            [](const LoadProfile* a, const LoadProfile* b) { return a->nf_id < b->nf_id; });
  items_.resize(monitored_.size());

  for (const auto& f : config_.forecasts) {
    const auto* nf = catalog_->find_nf(f.nf_id);
    if (!nf || nf->sharing != Sharing::Dedicated)
      throw Error(ErrorCode::ValidationError, fmt::format("forecast references unknown NF '{}'", f.nf_id));
    auto* loop = loops_.at(catalog_->managing_domain(f.nf_id)).get();
    scheduler_.schedule(f.tick, fmt::format("fc-{}-h{}", f.nf_id, f.horizon),
                        [this, loop, f] { loop->request_forecast(f.nf_id, f.horizon, clock_.tick); });
  }
}

void World::record_initial_state() {
  const auto& th = config_.thresholds;
  fabric_.trace().append(
      {0, "", "sim/engine", "sim/sim.config", "config", "",
       fmt::format("option={} seed={} max_ticks={} h_short={} w_base={} k={} t_abs={} u_hi={} u_target={} "
                   "capacity_per_vcpu={} base_rt={} jitter={}",
                   to_string(config_.option), config_.seed, config_.max_ticks, th.short_horizon, th.baseline_window,
                   th.confirmations, format_number(th.absolute_rt_ms), format_number(th.util_high),
                   format_number(th.util_target), format_number(th.capacity_per_vcpu), format_number(th.base_rt_ms),
                   format_number(config_.jitter_ms))});
  const bool integrated = config_.option == DeploymentOption::Integrated1A;
  for (const auto& [pop_id, pop] : infra_.pops()) {
    const std::string domain = integrated ? virtualization_domain(pop_id) : std::string(kManoDomain);
    fabric_.trace().append({0, "", domain + "/mano.vim", domain + "/mano.vim.inventory", "init-" + pop_id, "",
                            fmt::format("pop={} alloc_vcpu={}/{} alloc_memory={}/{} alloc_storage={}/{}", pop_id,
                                        pop.allocated.vcpu, pop.capacity.vcpu, pop.allocated.memory_mib,
                                        pop.capacity.memory_mib, pop.allocated.storage_gib,
                                        pop.capacity.storage_gib)});
  }
  track_pops();
  check_invariants();
}

void World::track_pops() {
  for (const auto& [id, pop] : infra_.pops()) {
    const double ratio = allocation_ratio(pop);
    auto [it, inserted] = pop_peaks_.emplace(id, ratio);
    if (!inserted) it->second = std::max(it->second, ratio);
  }
}

DomainServices& World::services(const std::string& domain_id) {
  auto it = loops_.find(domain_id);
  if (it == loops_.end()) throw Error(ErrorCode::UnknownDomain, fmt::format("no closed loop in '{}'", domain_id));
  return *it->second;
}

const UdsfStore* World::udsf(const std::string& nf_id) const {
  auto it = udsf_.find(nf_id);
  return it == udsf_.end() ? nullptr : &it->second;
}

std::vector<LoopOutcome> World::outcomes() const {
  std::vector<LoopOutcome> all;
  for (const auto& [_, loop] : loops_) all.insert(all.end(), loop->outcomes().begin(), loop->outcomes().end());
  return all;
}

std::size_t World::completed_scalings() const {
  std::size_t n = 0;
  for (const auto& [_, loop] : loops_)
    n += static_cast<std::size_t>(std::count_if(loop->outcomes().begin(), loop->outcomes().end(),
                                                [](const LoopOutcome& o) { return o.scaled; }));
  return n;
}

std::size_t World::failed_chains() const {
  std::size_t n = 0;
  for (const auto& [_, loop] : loops_)
    n += static_cast<std::size_t>(std::count_if(loop->outcomes().begin(), loop->outcomes().end(),
                                                [](const LoopOutcome& o) { return o.error.has_value(); }));
  return n;
}

std::vector<AnomalyEvent> World::tick() {
  ++clock_.tick;
  std::vector<WorkloadResult> results(monitored_.size());
  phase_workload(results);
  phase_collection(results);
  auto events = phase_analytics();
  for (auto& [_, loop] : loops_) loop->run_intelligence(clock_.tick);
  for (auto& [_, loop] : loops_) loop->run_orchestration(clock_.tick);
  phase_control();
  check_invariants();
  track_pops();
  return events;
}

RunResult World::run_until(const std::function<bool(const World&)>& predicate, Tick max_ticks) {
  if (max_ticks <= 0) throw Error(ErrorCode::PreconditionViolated, "max_ticks must be positive");
  for (Tick i = 0; i < max_ticks; ++i) {
    tick();
    if (predicate && predicate(*this)) return {StopReason::Predicate, i + 1};
  }
  return {StopReason::MaxTicks, max_ticks};
}

void World::phase_workload(std::vector<WorkloadResult>& results) {
  for (std::size_t i = 0; i < monitored_.size(); ++i) {
    const auto& nf = catalog_->nf(monitored_[i]->nf_id);
    items_[i] = {monitored_[i]->load_at(clock_.tick), infra_.vnf(nf.hosting_vnf).resources.vcpu};
  }
  const WorkloadParams params{config_.thresholds.capacity_per_vcpu, config_.thresholds.base_rt_ms, config_.jitter_ms,
                              config_.seed, clock_.tick};
  if (mode_ == KernelMode::Parallel)
    workload_parallel(items_, results, params);
  else
    workload_serial(items_, results, params);
}

void World::phase_collection(const std::vector<WorkloadResult>& results) {
  const Tick now = clock_.tick;
  for (std::size_t i = 0; i < monitored_.size(); ++i) {
    const auto& nf_id = monitored_[i]->nf_id;
    const auto& nf = catalog_->nf(nf_id);
    if (!nf.mgmt_interface) continue;
    const auto& r = results[i];
    auto& stats = nf_stats_[nf_id];
    stats.max_rt_ms = stats.samples == 0 ? r.response_time_ms : std::max(stats.max_rt_ms, r.response_time_ms);
    if (r.response_time_ms > config_.thresholds.absolute_rt_ms) ++stats.over_threshold_ticks;
    ++stats.samples;

    const auto slice = catalog_->owning_slice(nf_id);
    const auto domain = catalog_->managing_domain(nf_id);
    const TelemetrySample rt{nf_id, Metric::ResponseTimeMs, r.response_time_ms, now};
    const TelemetrySample util{nf_id, Metric::UtilizationRatio, r.utilization, now};
    const ServiceRef source{domain, "nf." + nf_id};
    try {
      fabric_.invoke(make_envelope({now, telemetry_correlation(now, nf_id), slice}, source, {domain, kCollection}, "1",
                                   encode_stream({{util, SampleTag::Store}, {rt, SampleTag::Analyze}}),
                                   fmt::format("nf={} rt={} util={}", nf_id, format_number(r.response_time_ms),
                                               format_number(r.utilization))));
      if (catalog_->nf_of_type(slice, NfType::UDSF))
        fabric_.invoke(make_envelope({now, fmt::format("cp-{:06}-{}", now, nf_id), slice}, source,
                                     {domain, kCollection}, "", encode_stream({{rt, SampleTag::Localized}}),
                                     fmt::format("nf={} rt={} tag=Localized", nf_id, format_number(r.response_time_ms))));
    } catch (const Error& e) {
      violations_.push_back(fmt::format("tick {}: telemetry of '{}' not collected: {}", now, nf_id, e.what()));
    }
  }
}

std::vector<AnomalyEvent> World::phase_analytics() {
  std::vector<AnomalyEvent> events;
  for (auto& [_, loop] : loops_) {
    auto raised = loop->run_analytics(clock_.tick);
    events.insert(events.end(), raised.begin(), raised.end());
  }
  scheduler_.run_due(clock_.tick);
  return events;
}

void World::phase_control() {
  for (auto& [_, loop] : loops_) {
    while (auto ticket = loop->next_ticket()) {
      const auto before = infra_.serialize_state();
      const auto outcome = loop->execute(*ticket, clock_.tick);
      if (!outcome.scaled && infra_.serialize_state() != before)
        violations_.push_back(fmt::format("tick {}: failed chain {} changed VNF/PoP state", clock_.tick,
                                          ticket->correlation_id));
    }
  }
}

void World::check_invariants() {
  for (const auto& v : infra_.conservation_violations())
    violations_.push_back(fmt::format("tick {}: {}", clock_.tick, v));
  for (const auto& [id, vnf] : infra_.vnfs())
    if (vnf.lifecycle_state == LifecycleState::Scaling)
      violations_.push_back(fmt::format("tick {}: VNF '{}' left in Scaling", clock_.tick, id));
}

}  // namespace zsm
