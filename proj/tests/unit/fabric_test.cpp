#include <doctest.h>

#include <random>
#include <set>

#include "support.hpp"
#include "zsmsim/engine/world.hpp"
#include "zsmsim/fabric/fabric.hpp"
#include "zsmsim/mgmt3gpp/management.hpp"
#include "zsmsim/slice/slice_model.hpp"

using namespace zsm;
using zsmtest::code_of;

namespace {

ManagementDomain make_domain(const std::string& id, DomainLevel level = DomainLevel::E2EService,
                             std::vector<std::string> caps = {}, std::string owner = "operator") {
  ManagementDomain d;
  d.domain_id = id;
  d.level = level;
  d.owner = std::move(owner);
  for (auto& c : caps) d.services.push_back({c, c.substr(0, c.rfind('.')), id, true});
  return d;
}

Payload echo(const MessageEnvelope& env) {
  Payload out = env.payload;
  out.set(kSummaryField, "echoed");
  return out;
}

}  // namespace

TEST_CASE("registering a childless E2E domain") {
  DomainRegistry reg;
  reg.register_domain(make_domain("e2e"));
  CHECK(reg.size() == 1);
  CHECK(reg.is_forest());
}

TEST_CASE("registration rejects unknown children and duplicates") {
  DomainRegistry reg;
  auto d = make_domain("e2e");
  d.children = {"cn-x"};
  CHECK(code_of([&] { reg.register_domain(d); }) == ErrorCode::UnknownChild);
  CHECK(reg.size() == 0);
  reg.register_domain(make_domain("e2e"));
  CHECK(code_of([&] { reg.register_domain(make_domain("e2e")); }) == ErrorCode::DuplicateDomain);
}

TEST_CASE("compose_e2e keeps the forest") {
  DomainRegistry reg;
  reg.register_domain(make_domain("e2e"));
  reg.register_domain(make_domain("e2e-cn"));
  reg.register_domain(make_domain("cn-slice-1", DomainLevel::SliceSpecific, {}, "tenant-a"));

  SUBCASE("self loop") { CHECK(code_of([&] { reg.compose_e2e("e2e", {"e2e"}); }) == ErrorCode::CycleDetected); }
  SUBCASE("nesting depth") {
    reg.compose_e2e("e2e", {"e2e-cn"});
    reg.compose_e2e("e2e-cn", {"cn-slice-1"});
    CHECK(reg.depth("e2e") == 3);
    CHECK(reg.depth("cn-slice-1") == 1);
    CHECK(reg.parent_of("cn-slice-1") == std::optional<std::string>("e2e-cn"));
    CHECK(code_of([&] { reg.compose_e2e("cn-slice-1", {"e2e"}); }) == ErrorCode::CycleDetected);
    CHECK(reg.is_forest());
  }
  SUBCASE("a child has one parent") {
    reg.compose_e2e("e2e", {"cn-slice-1"});
    CHECK(code_of([&] { reg.attach_child("e2e-cn", "cn-slice-1"); }) == ErrorCode::ForestViolation);
  }
}

TEST_CASE("forest property survives random mutations") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 20; ++round) {
    DomainRegistry reg;
    std::vector<std::string> ids;
    for (int i = 0; i < 12; ++i) {
      ids.push_back("d" + std::to_string(i));
      reg.register_domain(make_domain(ids.back()));
    }
    for (int step = 0; step < 60; ++step) {
      const auto& parent = ids[rng() % ids.size()];
      std::vector<std::string> children;
      const auto n = rng() % 3;
      for (std::uint64_t k = 0; k < n; ++k) children.push_back(ids[rng() % ids.size()]);
      const auto before = reg.depth(parent);
      const auto err = code_of([&] {
        if (rng() % 2)
          reg.compose_e2e(parent, children);
        else if (!children.empty())
          reg.attach_child(parent, children.front());
      });
      REQUIRE(reg.is_forest());
      if (err) CHECK(reg.depth(parent) == before);
    }
  }
}

TEST_CASE("slice growth leaves existing descriptors untouched") {
  DomainRegistry reg;
  auto factory = standard_domain_factory(DeploymentOption::Integrated1A);
  reg.register_domain(factory(DomainLevel::E2EService, kCnDomain, "operator"));
  SliceCatalog catalog(reg, kCnDomain, factory);
  const std::vector<NfTemplateEntry> tpl{{NfType::SMF, {}, true}, {NfType::AMF, {}, true}, {NfType::NSSF, {}, true}};
  std::map<std::string, std::uint64_t> hashes;
  for (int i = 0; i < 50; ++i) {
    catalog.instantiate_slice(tpl, "tenant-" + std::to_string(i));
    for (const auto& [id, h] : hashes) REQUIRE(reg.descriptor_hash(id) == h);
    for (const auto& id : reg.order()) hashes.emplace(id, reg.descriptor_hash(id));
  }
  CHECK(reg.count(DomainLevel::SliceSpecific) == 50);
  CHECK(reg.count(DomainLevel::SharedNFs) == 1);
  CHECK(reg.count(DomainLevel::OverarchingNFs) == 1);
  CHECK(reg.is_forest());
}

TEST_CASE("glob matching") {
  CHECK(glob_match("zsm.domain.*", "zsm.domain.analytics"));
  CHECK(glob_match("cn-*", "cn-slice-1"));
  CHECK(glob_match("slice-?", "slice-7"));
  CHECK_FALSE(glob_match("slice-?", "slice-17"));
  CHECK_FALSE(glob_match("zsm.*", "3gpp.nsmf"));
  CHECK(glob_match("*", ""));
}

TEST_CASE("exposure policy is first-match with default deny") {
  ExposurePolicy p;
  CHECK_FALSE(p.allows("cn-slice-1", "tenant-a", "zsm.domain.analytics"));
  p.deny_domain("cn-slice-2", "*").allow_domain("cn-*", "zsm.domain.*");
  CHECK(p.allows("cn-slice-1", "t", "zsm.domain.analytics"));
  CHECK_FALSE(p.allows("cn-slice-2", "t", "zsm.domain.analytics"));
  CHECK_FALSE(p.allows("cn-slice-1", "t", "cp.pcf.policy"));
  p.allow_tenant("tenant-b", "cp.*");
  CHECK(p.allows("other", "tenant-b", "cp.pcf.policy"));
}

TEST_CASE("empty rule lists deny every caller") {
  std::mt19937_64 rng(11);
  Fabric fabric;
  std::vector<std::string> caps{"svc.a.op", "svc.b.op", "svc.c.read", "svc.d.write"};
  fabric.registry().register_domain(make_domain("provider", DomainLevel::E2EService, caps));
  for (int i = 0; i < 5; ++i) fabric.registry().register_domain(make_domain("caller-" + std::to_string(i)));
  for (const auto& c : caps) fabric.bind({"provider", c}, echo);
  for (int i = 0; i < 200; ++i) {
    const auto caller = "caller-" + std::to_string(rng() % 5);
    const auto& cap = caps[rng() % caps.size()];
    MessageEnvelope env;
    env.source = {caller, "probe"};
    env.target = {"provider", cap};
    CHECK(code_of([&] { fabric.invoke(env); }) == ErrorCode::AccessDenied);
  }
  CHECK(fabric.trace().size() == 0);
  CHECK(fabric.denied_count() == 200);
}

TEST_CASE("authorized invoke runs the handler and appends one record") {
  Fabric fabric;
  auto provider = make_domain("cn-slice-1", DomainLevel::SliceSpecific, {"zsm.domain.data.collection"}, "tenant-a");
  provider.exposure_policy.allow_domain("cn-slice-1", "*");
  fabric.registry().register_domain(provider);
  fabric.registry().register_domain(make_domain("cn-slice-2", DomainLevel::SliceSpecific, {}, "tenant-b"));
  fabric.bind({"cn-slice-1", "zsm.domain.data.collection"}, echo);

  auto env = make_envelope({4, "tel-1", "slice-1"}, {"cn-slice-1", "nf.smf-1"}, {"cn-slice-1", "zsm.domain.data.collection"},
                           "1", Payload{{"x", "1"}}, "nf=smf-1");
  const auto out = fabric.invoke(env);
  CHECK(out == Payload{{"x", "1"}});
  REQUIRE(fabric.trace().size() == 1);
  const auto& r = fabric.trace().records().front();
  CHECK(r.detail == "nf=smf-1 => echoed");
  CHECK(r.correlation_id == "tel-1");
  CHECK(r.source == "cn-slice-1/nf.smf-1");

  env.source = {"cn-slice-2", "zsm.domain.analytics"};
  CHECK(code_of([&] { fabric.invoke(env); }) == ErrorCode::AccessDenied);
  CHECK(fabric.trace().size() == 1);

  env.target.capability = "zsm.domain.nope";
  CHECK(code_of([&] { fabric.invoke(env); }) == ErrorCode::CapabilityNotFound);
}

TEST_CASE("correlation id survives a nested chain") {
  Fabric fabric;
  auto d = make_domain("d", DomainLevel::E2EService, {"a.first", "b.second"});
  d.exposure_policy.allow_domain("d", "*");
  fabric.registry().register_domain(d);
  fabric.bind({"d", "b.second"}, [](const MessageEnvelope&) { return Payload{}; });
  fabric.bind({"d", "a.first"}, [&fabric](const MessageEnvelope& env) {
    auto next = env;
    next.source = {"d", "a"};
    next.target = {"d", "b.second"};
    return fabric.invoke(next);
  });
  fabric.invoke(make_envelope({1, "corr-9", ""}, {"d", "client"}, {"d", "a.first"}, "", {}, ""));
  REQUIRE(fabric.trace().size() == 2);
  for (const auto& r : fabric.trace().records()) CHECK(r.correlation_id == "corr-9");
  CHECK(fabric.trace().chain("corr-9").size() == 2);
}

TEST_CASE("non-service-based operations need an adapter or a native binding") {
  Fabric fabric;
  auto factory = standard_domain_factory(DeploymentOption::Integrated1B);
  fabric.registry().register_domain(factory(DomainLevel::E2EService, kCnDomain, "operator"));
  fabric.registry().register_domain(factory(DomainLevel::Virtualization, kManoDomain, "operator"));
  fabric.bind({kManoDomain, "Os-Ma-nfvo.ScaleVnf"}, [](const MessageEnvelope& env) { return env.payload; });

  const auto direct = make_envelope({1, "c", ""}, {kCnDomain, "zsm.domain.control"}, {kManoDomain, "Os-Ma-nfvo.ScaleVnf"},
                                    "", {}, "");
  CHECK(code_of([&] { fabric.invoke(direct); }) == ErrorCode::NotServiceBased);
  CHECK(code_of([&] { fabric.invoke_native(direct); }) == ErrorCode::NotServiceBased);
  fabric.grant_native(direct.source, "Os-Ma-nfvo.ScaleVnf");
  CHECK_NOTHROW(fabric.invoke_native(direct));
}

TEST_CASE("codec translation is lossless and strict") {
  const auto codec = os_ma_nfvo_codec();
  const Payload request{{"op", "ScaleVnf"}, {"vnf", "smf-1"}, {"delta_vcpu", "1"}};
  const auto external = codec.translate(request);
  CHECK(external.has("vnfInstanceId"));
  CHECK_FALSE(external.has("vnf"));
  CHECK(codec.translate_back(external) == request);

  CHECK(code_of([&] { codec.translate(Payload{{"foo", "1"}}); }) == ErrorCode::CodecMismatch);
  CHECK(code_of([&] { codec.translate_back(Payload{{"vnf", "1"}}); }) == ErrorCode::CodecMismatch);
  CHECK(code_of([] { FieldCodec({{"a", "x"}, {"b", "x"}}); }) == ErrorCode::CodecMismatch);
}

TEST_CASE("adapter translation round trip over generated requests") {
  std::mt19937_64 rng(2024);
  const auto codec = os_ma_nfvo_codec();
  for (int i = 0; i < 1000; ++i) {
    ScaleRequest r;
    r.request_id = "req-" + std::to_string(rng() % 100000);
    r.vnf_id = "vnf-smf-" + std::to_string(rng() % 50);
    r.delta = {static_cast<std::int64_t>(rng() % 17) - 8, static_cast<std::int64_t>(rng() % 4096) - 2048,
               static_cast<std::int64_t>(rng() % 200) - 100};
    r.origin = static_cast<RequestOrigin>(rng() % 3);
    const auto zsm_side = encode_scale_request(r);
    REQUIRE(codec.translate_back(codec.translate(zsm_side)) == zsm_side);
    const auto back = decode_scale_request(codec.translate_back(codec.translate(zsm_side)));
    CHECK(back.delta == r.delta);
    CHECK(back.vnf_id == r.vnf_id);
  }
}

TEST_CASE("adapt_invoke records the adapter hop and translates both ways") {
  Fabric fabric;
  auto factory = standard_domain_factory(DeploymentOption::Integrated1B);
  fabric.registry().register_domain(factory(DomainLevel::E2EService, kCnDomain, "operator"));
  fabric.registry().register_domain(factory(DomainLevel::Virtualization, kManoDomain, "operator"));
  Payload seen;
  fabric.bind({kManoDomain, "Os-Ma-nfvo.ScaleVnf"}, [&seen](const MessageEnvelope& env) {
    seen = env.payload;
    return env.payload;
  });
  fabric.register_adapter({"nfvo-adapter", "zsm.adapter.nfvo.scale_vnf", "Os-Ma-nfvo.ScaleVnf", kManoDomain,
                           os_ma_nfvo_codec()},
                          kCnDomain, "zsm.adapter.nfvo");
  const Payload request{{"op", "ScaleVnf"}, {"vnf", "smf-1"}, {"delta_vcpu", "1"}};
  const auto out = fabric.invoke(make_envelope({3, "c-1", "slice-1"}, {kCnDomain, "3gpp.nssmf"},
                                               {kCnDomain, "zsm.adapter.nfvo.scale_vnf"}, "7", request, ""));
  CHECK(out == request);
  CHECK(seen == os_ma_nfvo_codec().translate(request));
  REQUIRE(fabric.trace().size() == 2);
  CHECK(fabric.trace().records()[1].source == "e2e-cn/zsm.adapter.nfvo");
  CHECK(fabric.trace().records()[1].target == "nfv-mano/Os-Ma-nfvo.ScaleVnf");
  CHECK(code_of([&] { fabric.adapter("missing"); }) == ErrorCode::UnknownAdapter);
}

TEST_CASE("ingress gate rejects before the handler and the trace") {
  Fabric fabric;
  auto p = make_domain("p", DomainLevel::E2EService, {"x.op"});
  p.exposure_policy.allow_domain("*", "*");
  fabric.registry().register_domain(p);
  fabric.registry().register_domain(make_domain("q"));
  bool ran = false;
  fabric.bind({"p", "x.op"}, [&ran](const MessageEnvelope&) {
    ran = true;
    return Payload{};
  });
  fabric.set_ingress_gate("p", [](const ServiceRef&, const std::string&) {
    throw Error(ErrorCode::NotExposed, "closed");
  });
  CHECK(code_of([&] { fabric.invoke(make_envelope({}, {"q", "s"}, {"p", "x.op"}, "", {}, "")); }) ==
        ErrorCode::NotExposed);
  CHECK_FALSE(ran);
  CHECK(fabric.trace().size() == 0);
  CHECK_NOTHROW(fabric.invoke(make_envelope({}, {"p", "s"}, {"p", "x.op"}, "", {}, "")));
}

TEST_CASE("subscriptions are idempotent and topics fan out") {
  Fabric fabric;
  auto d = make_domain("d", DomainLevel::E2EService, {"topic.anomaly.s1", "sink.notify"});
  d.exposure_policy.allow_domain("d", "*");
  fabric.registry().register_domain(d);
  int notified = 0;
  fabric.bind({"d", "sink.notify"}, [&notified](const MessageEnvelope& env) {
    ++notified;
    CHECK(env.correlation_id == "c.ntf");
    return Payload{};
  });
  fabric.bind_topic({"d", "topic.anomaly.s1"});
  const auto a = fabric.subscribe({"d", "sink"}, "topic.anomaly.*", {"d", "sink.notify"});
  const auto b = fabric.subscribe({"d", "sink"}, "topic.anomaly.*", {"d", "sink.notify"});
  CHECK(a == b);
  fabric.invoke(make_envelope({1, "c", ""}, {"d", "pub"}, {"d", "topic.anomaly.s1"}, "3", {}, ""));
  CHECK(notified == 1);
  CHECK(fabric.trace().records().front().detail == "=> delivered=1");
}

TEST_CASE("trace lines round trip") {
  TraceRecord r{12, "2'", "cn-slice-1/zsm.domain.data.collection", "cn-slice-1/zsm.domain.data.storage", "tel-1",
                "slice-1", "value=0.5 => stored"};
  CHECK(parse_record(format_record(r)) == r);
  TraceRecord bare{0, "", "sim/engine", "sim/sim.config", "config", "", "x"};
  CHECK(format_record(bare) == "0\t-\tsim/engine\tsim/sim.config\tconfig\t-\tx");
  CHECK(parse_record(format_record(bare)) == bare);
  CHECK(code_of([] { parse_record("1\t2\tthree"); }) == ErrorCode::MalformedTrace);
  CHECK(code_of([] { parse_record("x\t-\ta/b\tc/d\te\t-\tf"); }) == ErrorCode::MalformedTrace);
  CHECK(sanitize_detail("a\tb\nc") == "a b c");
}
