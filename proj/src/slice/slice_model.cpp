#include "zsmsim/slice/slice_model.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <fmt/format.h>

#include "zsmsim/error.hpp"

namespace zsm {

std::string_view to_string(NfType type) {
  switch (type) {
    case NfType::AMF: return "AMF";
    case NfType::NRF: return "NRF";
    case NfType::SMF: return "SMF";
    case NfType::PCF: return "PCF";
    case NfType::NWDAF: return "NWDAF";
    case NfType::NSSF: return "NSSF";
    case NfType::UDM: return "UDM";
    case NfType::UDR: return "UDR";
    case NfType::UDSF: return "UDSF";
  }
  return "?";
}

std::string_view to_string(Sharing sharing) {
  switch (sharing) {
    case Sharing::Dedicated: return "Dedicated";
    case Sharing::Shared: return "Shared";
    case Sharing::Overarching: return "Overarching";
  }
  return "?";
}

namespace {

std::string upper(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

}  // namespace

NfType parse_nf_type(std::string_view text) {
  const auto u = upper(text);
  for (auto t : {NfType::AMF, NfType::NRF, NfType::SMF, NfType::PCF, NfType::NWDAF, NfType::NSSF, NfType::UDM,
                 NfType::UDR, NfType::UDSF})
    if (to_string(t) == u) return t;
  throw Error(ErrorCode::ValidationError, fmt::format("unknown NF type '{}'", text));
}

Sharing parse_sharing(std::string_view text) {
  const auto u = upper(text);
  if (u == "DEDICATED") return Sharing::Dedicated;
  if (u == "SHARED") return Sharing::Shared;
  if (u == "OVERARCHING") return Sharing::Overarching;
  throw Error(ErrorCode::ValidationError, fmt::format("unknown sharing class '{}'", text));
}

Sharing classify_nf(NfType type, std::optional<Sharing> deployment_hint) {
  switch (type) {
    case NfType::AMF:
    case NfType::NRF: return Sharing::Shared;
    case NfType::SMF:
    case NfType::PCF:
    case NfType::NWDAF: return Sharing::Dedicated;
    case NfType::NSSF: return Sharing::Overarching;
    case NfType::UDM:
    case NfType::UDR:
    case NfType::UDSF:
      if (!deployment_hint)
        throw Error(ErrorCode::HintRequired, fmt::format("{} needs a deployment hint", to_string(type)));
      return *deployment_hint;
  }
  throw Error(ErrorCode::PreconditionViolated, "unknown NF type");
}

std::string nf_stem(NfType type) {
  std::string out(to_string(type));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

SliceCatalog::SliceCatalog(DomainRegistry& registry, std::string cn_domain, DomainFactory factory)
    : registry_(registry), cn_domain_(std::move(cn_domain)), factory_(std::move(factory)) {}

std::string SliceCatalog::ensure_group_domain(DomainLevel level, std::vector<std::string>& created) {
  auto& slot = level == DomainLevel::SharedNFs ? shared_domain_ : overarching_domain_;
  if (!slot.empty()) return slot;
  const std::string id(level == DomainLevel::SharedNFs ? kSharedDomainId : kOverarchingDomainId);
  registry_.register_domain(factory_(level, id, "operator"));
  registry_.attach_child(cn_domain_, id);
  created.push_back(id);
  slot = id;
  return slot;
}

InstantiationResult SliceCatalog::instantiate_slice(const std::vector<NfTemplateEntry>& nf_template,
                                                    const std::string& owner) {
  if (nf_template.empty()) throw Error(ErrorCode::EmptyTemplate, "slice template lists no NFs");
  if (owner.empty()) throw Error(ErrorCode::PreconditionViolated, "slice owner is empty");

  // classify everything before touching state so a bad template changes nothing
  std::vector<Sharing> classes;
  std::set<NfType> seen;
  for (const auto& entry : nf_template) {
    classes.push_back(classify_nf(entry.type, entry.hint));
    if (!seen.insert(entry.type).second)
      throw Error(ErrorCode::PreconditionViolated,
                  fmt::format("template lists {} twice", to_string(entry.type)));
  }

  const std::size_t ordinal = slice_order_.size() + 1;
  InstantiationResult result;
  auto& slice = result.slice;
  slice.slice_id = fmt::format("slice-{}", ordinal);
  slice.owner = owner;
  slice.mgmt_domain = fmt::format("cn-{}", slice.slice_id);

  for (std::size_t i = 0; i < nf_template.size(); ++i) {
    const auto& entry = nf_template[i];
    const Sharing sharing = classes[i];
    std::string nf_id;
    switch (sharing) {
      case Sharing::Dedicated: nf_id = fmt::format("{}-{}", nf_stem(entry.type), ordinal); break;
      case Sharing::Shared: nf_id = nf_stem(entry.type) + "-shared"; break;
      case Sharing::Overarching: nf_id = nf_stem(entry.type) + "-common"; break;
    }
    if (!nfs_.count(nf_id)) {
      nfs_[nf_id] = NetworkFunction{nf_id, entry.type, sharing, "vnf-" + nf_id, entry.mgmt_interface};
      result.created_nfs.push_back(nf_id);
    }
    switch (sharing) {
      case Sharing::Dedicated:
        slice.dedicated_nfs.insert(nf_id);
        dedicated_owner_[nf_id] = slice.slice_id;
        break;
      case Sharing::Shared: slice.shared_nfs.insert(nf_id); break;
      case Sharing::Overarching: slice.overarching_nfs.insert(nf_id); break;
    }
  }

  registry_.register_domain(factory_(DomainLevel::SliceSpecific, slice.mgmt_domain, owner));
  registry_.attach_child(cn_domain_, slice.mgmt_domain);
  result.created_domains.push_back(slice.mgmt_domain);
  if (!slice.shared_nfs.empty()) ensure_group_domain(DomainLevel::SharedNFs, result.created_domains);
  if (!slice.overarching_nfs.empty()) ensure_group_domain(DomainLevel::OverarchingNFs, result.created_domains);

  slice_order_.push_back(slice.slice_id);
  slices_[slice.slice_id] = slice;
  return result;
}

const SliceInstance& SliceCatalog::slice(const std::string& slice_id) const {
  auto it = slices_.find(slice_id);
  if (it == slices_.end()) throw Error(ErrorCode::UnknownSlice, fmt::format("unknown slice '{}'", slice_id));
  return it->second;
}

const NetworkFunction& SliceCatalog::nf(const std::string& nf_id) const {
  auto it = nfs_.find(nf_id);
  if (it == nfs_.end()) throw Error(ErrorCode::UnknownTarget, fmt::format("unknown NF '{}'", nf_id));
  return it->second;
}

const NetworkFunction* SliceCatalog::find_nf(const std::string& nf_id) const {
  auto it = nfs_.find(nf_id);
  return it == nfs_.end() ? nullptr : &it->second;
}

std::string SliceCatalog::managing_domain(const std::string& nf_id) const {
  switch (nf(nf_id).sharing) {
    case Sharing::Dedicated: return slices_.at(dedicated_owner_.at(nf_id)).mgmt_domain;
    case Sharing::Shared: return shared_domain_;
    case Sharing::Overarching: return overarching_domain_;
  }
  return {};
}

std::string SliceCatalog::owning_slice(const std::string& nf_id) const {
  auto it = dedicated_owner_.find(nf_id);
  return it == dedicated_owner_.end() ? std::string{} : it->second;
}

std::optional<std::string> SliceCatalog::nf_of_type(const std::string& slice_id, NfType type) const {
  const auto& s = slice(slice_id);
  for (const auto* group : {&s.dedicated_nfs, &s.shared_nfs, &s.overarching_nfs})
    for (const auto& id : *group)
      if (nfs_.at(id).nf_type == type) return id;
  return std::nullopt;
}

}  // namespace zsm
