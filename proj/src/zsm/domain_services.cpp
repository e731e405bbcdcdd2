#include "zsmsim/zsm/domain_services.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace zsm {

namespace {

Payload with_summary(Payload p, std::string summary) {
  p.set(kSummaryField, std::move(summary));
  return p;
}

std::string sample_text(const TaggedSample& ts, std::string_view data_class) {
  const auto& s = ts.sample;
  if (data_class.empty())
    return fmt::format("nf={} tag={} metric={} value={}", s.nf_id, to_string(ts.tag), to_string(s.metric),
                       format_number(s.value));
  return fmt::format("nf={} tag={} class={} metric={} value={}", s.nf_id, to_string(ts.tag), data_class,
                     to_string(s.metric), format_number(s.value));
}

LoopOutcome make_outcome(std::string corr, std::string slice, std::string nf, std::string vnf, Tick tick,
                         bool scaled) {
  LoopOutcome out;
  out.correlation_id = std::move(corr);
  out.slice_id = std::move(slice);
  out.nf_id = std::move(nf);
  out.vnf_id = std::move(vnf);
  out.tick = tick;
  out.scaled = scaled;
  return out;
}

}  // namespace

DomainServices::DomainServices(Fabric& fabric, const SliceCatalog& catalog, const NfvInfrastructure& infra,
                               std::string domain_id, std::string slice_id, LoopSettings settings)
    : fabric_(fabric),
      catalog_(catalog),
      infra_(infra),
      domain_id_(std::move(domain_id)),
      slice_id_(std::move(slice_id)),
      settings_(std::move(settings)),
      tracker_(DetectionConfig{settings_.thresholds.baseline_window, settings_.thresholds.confirmations,
                               settings_.thresholds.absolute_rt_ms}),
      policies_(&catalog.slice(slice_id_)) {}

void DomainServices::bind_handlers() {
  auto bind = [this](const std::string& capability, Payload (DomainServices::*fn)(const MessageEnvelope&)) {
    fabric_.bind(capability_ref(capability), [this, fn](const MessageEnvelope& env) { return (this->*fn)(env); });
  };
  bind(kCollection, &DomainServices::on_collect);
  bind(kStorage, &DomainServices::on_store);
  bind(kAnalytics, &DomainServices::on_analyze);
  bind(kForecast, &DomainServices::on_forecast);
  bind(kIntelligence, &DomainServices::on_decide);
  bind(kOrchestration, &DomainServices::on_orchestrate);
  bind(kControlLifecycle, &DomainServices::on_file_ticket);
  fabric_.bind_topic(capability_ref(anomaly_topic()));
  if (auto nwdaf = catalog_.nf_of_type(slice_id_, NfType::NWDAF);
      nwdaf && catalog_.managing_domain(*nwdaf) == domain_id_)
    bind(kNwdafForecast, &DomainServices::on_nwdaf_forecast);
  if (auto pcf = catalog_.nf_of_type(slice_id_, NfType::PCF); pcf && catalog_.managing_domain(*pcf) == domain_id_)
    bind(kPcfPolicy, &DomainServices::on_install_policy);
}

const std::vector<TelemetrySample>& DomainServices::analytics_window(const std::string& nf_id) const {
  static const std::vector<TelemetrySample> empty;
  auto it = windows_.find(nf_id);
  return it == windows_.end() ? empty : it->second;
}

// --- collection / storage / analytics ----------------------------------------

RoutedCounts DomainServices::collect(const std::vector<TaggedSample>& stream, const CallScope& scope) {
  for (const auto& ts : stream) {
    const auto* nf = catalog_.find_nf(ts.sample.nf_id);
    if (!nf || !nf->mgmt_interface)
      throw Error(ErrorCode::NoMgmtInterface,
                  fmt::format("NF '{}' has no management interface", ts.sample.nf_id), kCollection);
  }
  RoutedCounts counts;
  for (const auto& ts : stream) {
    Payload sample = encode_sample(ts.sample);
    switch (route_sample(ts.sample, ts.tag)) {
      case Destination::DomainDataStorage:
        sample.set("class", "Management");
        fabric_.invoke(make_envelope(scope, service(kCollection), capability_ref(kStorage), "2'", std::move(sample),
                                     sample_text(ts, "Management")));
        ++counts.storage;
        break;
      case Destination::DomainAnalytics:
        fabric_.invoke(make_envelope(scope, service(kCollection), capability_ref(kAnalytics), "2",
                                     std::move(sample), sample_text(ts, "")));
        ++counts.analytics;
        break;
      case Destination::Udsf: {
        auto udsf = catalog_.nf_of_type(slice_id_, NfType::UDSF);
        if (!udsf)
          throw Error(ErrorCode::CapabilityNotFound,
                      fmt::format("slice '{}' has no UDSF for localized data", slice_id_), kCollection);
        sample.set("class", "Localized");
        fabric_.invoke(make_envelope(scope, service(kCollection),
                                     {catalog_.managing_domain(*udsf), kUdsfStorage}, "", std::move(sample),
                                     sample_text(ts, "Localized")));
        ++counts.udsf;
        break;
      }
    }
  }
  return counts;
}

Payload DomainServices::on_collect(const MessageEnvelope& env) {
  const auto counts = collect(decode_stream(env.payload), {env.tick, env.correlation_id, env.slice_id});
  return with_summary({}, fmt::format("storage={} analytics={} udsf={}", counts.storage, counts.analytics,
                                      counts.udsf));
}

Payload DomainServices::on_store(const MessageEnvelope& env) {
  storage_.put(decode_sample(env.payload));
  return with_summary({}, "stored");
}

Payload DomainServices::on_analyze(const MessageEnvelope& env) {
  const auto sample = decode_sample(env.payload);
  if (sample.metric != Metric::ResponseTimeMs) return with_summary({}, "ignored");
  windows_[sample.nf_id].push_back(sample);
  return with_summary({}, "queued");
}

std::vector<AnomalyEvent> DomainServices::run_analytics(Tick tick) {
  std::vector<AnomalyEvent> emitted;
  for (const auto& [nf, window] : windows_) {
    if (window.empty() || window.back().tick != tick) continue;
    auto obs = tracker_.observe(slice_id_, window);
    const auto corr = telemetry_correlation(tick, nf);
    if (obs.cleared) {
      fabric_.trace().append({tick, "", service(kAnalytics).str(), capability_ref(anomaly_topic()).str(),
                              corr + ".clr", slice_id_,
                              fmt::format("cleared event={} nf={}", obs.cleared->event_id, nf)});
    }
    if (!obs.emitted) continue;
    const auto& ev = *obs.emitted;
    events_[ev.event_id] = ev;
    Payload p;
    p.set("event", ev.event_id);
    p.set("nf", ev.nf_id);
    p.set("slice", ev.slice_id);
    p.set("onset", std::int64_t{ev.onset_tick});
    fabric_.invoke(make_envelope({tick, corr, slice_id_}, service(kAnalytics), capability_ref(anomaly_topic()), "3",
                                 std::move(p),
                                 fmt::format("event={} nf={} onset={} mean={} stddev={}", ev.event_id, ev.nf_id,
                                             ev.onset_tick, format_number(ev.baseline_mean),
                                             format_number(ev.baseline_stddev))));
    new_events_.push_back({ev, corr});
    emitted.push_back(ev);
  }
  return emitted;
}

std::optional<double> DomainServices::request_forecast(const std::string& nf_id, Tick horizon, Tick tick) {
  const auto provider = forecast_provider(horizon, settings_.thresholds.short_horizon);
  CapabilityRef target = capability_ref(kForecast);
  if (provider == ForecastProvider::Nwdaf) {
    auto nwdaf = catalog_.nf_of_type(slice_id_, NfType::NWDAF);
    target = {nwdaf ? catalog_.managing_domain(*nwdaf) : domain_id_, kNwdafForecast};
  }
  Payload p;
  p.set("nf", nf_id);
  p.set("horizon", std::int64_t{horizon});
  const CallScope scope{tick, fmt::format("fc-{:06}-{}-h{}", tick, nf_id, horizon), slice_id_};
  try {
    const auto response = fabric_.invoke(make_envelope(scope, service(kIntelligence), target, "", std::move(p),
                                                       fmt::format("nf={} horizon={}", nf_id, horizon)));
    return response.number("forecast");
  } catch (const Error&) {
    return std::nullopt;
  }
}

Payload DomainServices::on_forecast(const MessageEnvelope& env) {
  const auto& window = analytics_window(env.payload.str("nf"));
  const auto n = std::min(window.size(), settings_.thresholds.baseline_window);
  const auto value = zsm_forecast(std::span(window).last(n), env.payload.integer("horizon"),
                                  settings_.thresholds.short_horizon);
  Payload p;
  p.set("forecast", value);
  return with_summary(p, fmt::format("forecast={} provider={}", format_number(value),
                                     to_string(ForecastProvider::ZsmAnalytics)));
}

Payload DomainServices::on_nwdaf_forecast(const MessageEnvelope& env) {
  std::vector<double> values;
  for (const auto& s : analytics_window(env.payload.str("nf"))) values.push_back(s.value);
  const auto value = nwdaf_forecast(values, env.payload.integer("horizon"),
                                    {settings_.thresholds.short_horizon, settings_.thresholds.nwdaf_window});
  Payload p;
  p.set("forecast", value);
  return with_summary(p, fmt::format("forecast={} provider={}", format_number(value),
                                     to_string(ForecastProvider::Nwdaf)));
}

// --- intelligence / orchestration / control -----------------------------------------

void DomainServices::run_intelligence(Tick tick) {
  auto pending = std::move(new_events_);
  new_events_.clear();
  for (const auto& [event, corr] : pending) {
    const auto vnf = catalog_.nf(event.nf_id).hosting_vnf;
    Payload p;
    p.set("event", event.event_id);
    Payload response;
    try {
      response = fabric_.invoke(make_envelope({tick, corr, slice_id_}, service(kAnalytics),
                                              capability_ref(kIntelligence), "4", std::move(p),
                                              fmt::format("event={} nf={}", event.event_id, event.nf_id)));
    } catch (const Error& e) {
      fail_chain(corr, event.nf_id, vnf, e, tick);
      continue;
    }
    const auto& decision = decisions_.at(response.str("decision"));
    if (decision.kind == DecisionKind::ScaleVnf) {
      new_decisions_.push_back({decision, corr});
      continue;
    }
    auto out = make_outcome(corr, slice_id_, event.nf_id, vnf, tick, false);
    close_chain(std::move(out), kIntelligence, fmt::format("no-action decision={}", to_string(decision.kind)), tick);
  }
}

Payload DomainServices::on_decide(const MessageEnvelope& env) {
  const auto& event = events_.at(env.payload.str("event"));
  const auto util = storage_.latest(event.nf_id, Metric::UtilizationRatio);
  if (!util)
    throw Error(ErrorCode::InsufficientData, fmt::format("no utilization stored for '{}'", event.nf_id),
                kIntelligence);
  const auto& vnf = infra_.vnf(catalog_.nf(event.nf_id).hosting_vnf);
  const auto& th = settings_.thresholds;
  DecisionContext ctx;
  ctx.tick = util->tick;
  ctx.utilization = util->value;
  ctx.current_vcpu = vnf.resources.vcpu;
  ctx.capacity_per_vcpu = th.capacity_per_vcpu;
  ctx.load = util->value * static_cast<double>(vnf.resources.vcpu) * th.capacity_per_vcpu;
  ctx.target_vnf = vnf.vnf_id;
  const auto decision = decide(&event, ctx, {th.util_high, th.util_target});
  decisions_[decision.decision_id] = decision;
  ++decision_counts_[decision.kind];

  if (decision.kind == DecisionKind::ScaleVnf) {
    if (auto pcf = catalog_.nf_of_type(slice_id_, NfType::PCF)) {
      const auto policy = generate_dynamic_policy(decision);
      try {
        fabric_.invoke(make_envelope({env.tick, env.correlation_id + ".pol", env.slice_id}, service(kIntelligence),
                                     {catalog_.managing_domain(*pcf), kPcfPolicy}, "", encode_policy(policy),
                                     fmt::format("policy={} kind=Dynamic nf={} admission_rate_cap={}",
                                                 policy.policy_id, policy.target_nf,
                                                 policy.body.at("admission_rate_cap"))));
      } catch (const Error&) {
        // the scaling proceeds without the admission cap
      }
    }
  }
  Payload p;
  p.set("decision", decision.decision_id);
  return with_summary(p, fmt::format("decision={} delta_vcpu={} util={} load={}", to_string(decision.kind),
                                     decision.requested_delta.vcpu, format_number(ctx.utilization),
                                     format_number(ctx.load)));
}

Payload DomainServices::on_install_policy(const MessageEnvelope& env) {
  const auto& active = policies_.install(decode_policy(env.payload));
  return with_summary({}, fmt::format("active={}", active.size()));
}

void DomainServices::run_orchestration(Tick tick) {
  auto pending = std::move(new_decisions_);
  new_decisions_.clear();
  for (const auto& [decision, corr] : pending) {
    Payload p;
    p.set("decision", decision.decision_id);
    try {
      fabric_.invoke(make_envelope({tick, corr, slice_id_}, service(kIntelligence), capability_ref(kOrchestration),
                                   "5", std::move(p),
                                   fmt::format("decision={} vnf={} delta_vcpu={}", decision.decision_id,
                                               decision.target_vnf, decision.requested_delta.vcpu)));
    } catch (const Error& e) {
      fail_chain(corr, decision.nf_id, decision.target_vnf, e, tick);
    }
  }
}

Payload DomainServices::on_orchestrate(const MessageEnvelope& env) {
  const auto& decision = decisions_.at(env.payload.str("decision"));
  const auto plan = orchestrate(decision, snapshot_model(infra_, env.tick), settings_.option);
  plans_[plan.plan_id] = plan;
  Payload p;
  p.set("plan", plan.plan_id);
  fabric_.invoke(make_envelope({env.tick, env.correlation_id, env.slice_id}, service(kOrchestration),
                               capability_ref(kControlLifecycle), "", std::move(p),
                               fmt::format("plan={} vnf={} granted_vcpu={} route={}", plan.plan_id, plan.target_vnf,
                                           plan.granted_delta.vcpu, to_string(plan.route))));
  return with_summary({}, fmt::format("plan={} granted_vcpu={}", plan.plan_id, plan.granted_delta.vcpu));
}

Payload DomainServices::on_file_ticket(const MessageEnvelope& env) {
  tickets_.push_back({plans_.at(env.payload.str("plan")), env.correlation_id});
  return with_summary({}, fmt::format("queued={}", tickets_.size()));
}

std::optional<ControlTicket> DomainServices::next_ticket() {
  if (tickets_.empty()) return std::nullopt;
  auto t = std::move(tickets_.front());
  tickets_.pop_front();
  return t;
}

ScaleOutcome DomainServices::control_execute(const ScalePlan& plan, const CallScope& scope) {
  ScaleRequest request{"req-" + plan.plan_id, plan.target_vnf, plan.granted_delta, RequestOrigin::Nssmf,
                       scope.correlation_id};
  Payload p = encode_scale_request(request);
  p.set(plan.route == PlanRoute::NsmfExternal ? "slice" : "subnet", slice_id_);
  const auto response = fabric_.invoke(
      make_envelope(scope, service(kControl), settings_.control_target, "6", std::move(p),
                    fmt::format("plan={} vnf={} delta_vcpu={} route={}", plan.plan_id, plan.target_vnf,
                                plan.granted_delta.vcpu, to_string(plan.route))));
  return decode_scale_outcome(response);
}

LoopOutcome DomainServices::execute(const ControlTicket& ticket, Tick tick) {
  const auto& plan = ticket.plan;
  try {
    const auto result = control_execute(plan, {tick, ticket.correlation_id, slice_id_});
    auto out = make_outcome(ticket.correlation_id, slice_id_, plan.nf_id, plan.target_vnf, tick, true);
    out.outcome = result;
    close_chain(out, kControl,
                fmt::format("ok nf={} vnf={} vcpu={} granted_vcpu={}", plan.nf_id, plan.target_vnf,
                            result.resources.vcpu, result.granted.vcpu),
                tick);
  } catch (const Error& e) {
    fail_chain(ticket.correlation_id, plan.nf_id, plan.target_vnf, e, tick);
  }
  return outcomes_.back();
}

void DomainServices::close_chain(LoopOutcome outcome, const std::string& source_kind, const std::string& detail,
                                 Tick tick) {
  fabric_.trace().append({tick, "", domain_id_ + "/" + source_kind, domain_id_ + "/" + kLoopOutcome,
                          outcome.correlation_id, slice_id_, detail});
  tracker_.resolve(outcome.nf_id, tick);
  outcomes_.push_back(std::move(outcome));
}

void DomainServices::fail_chain(const std::string& correlation_id, const std::string& nf_id,
                                const std::string& vnf_id, const Error& error, Tick tick) {
  auto out = make_outcome(correlation_id, slice_id_, nf_id, vnf_id, tick, false);
  out.error = error.code();
  out.stopped_at = error.origin().empty() ? std::string(kControl) : error.origin();
  const auto source = out.stopped_at;
  close_chain(std::move(out), source, fmt::format("error={}", to_string(error.code())), tick);
}

}  // namespace zsm
