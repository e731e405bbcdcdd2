#include "zsmsim/fabric/adapter.hpp"

#include <set>

#include <fmt/format.h>

#include "zsmsim/error.hpp"

namespace zsm {

FieldCodec::FieldCodec(std::vector<std::pair<std::string, std::string>> zsm_to_external)
    : mapping_(std::move(zsm_to_external)) {
  std::set<std::string> left, right;
  for (const auto& [z, e] : mapping_) {
    if (!left.insert(z).second || !right.insert(e).second)
      throw Error(ErrorCode::CodecMismatch, fmt::format("codec is not bijective at '{}' <-> '{}'", z, e));
  }
}

namespace {

Payload rename(const Payload& in, const std::vector<std::pair<std::string, std::string>>& mapping,
               bool forward) {
  Payload out;
  for (const auto& [key, value] : in.fields()) {
    const std::string* renamed = nullptr;
    for (const auto& [z, e] : mapping) {
      if ((forward ? z : e) == key) {
        renamed = forward ? &e : &z;
        break;
      }
    }
    if (!renamed)
      throw Error(ErrorCode::CodecMismatch, fmt::format("field '{}' has no mapping", key));
    out.set(*renamed, value);
  }
  return out;
}

}  // namespace

Payload FieldCodec::translate(const Payload& zsm_side) const { return rename(zsm_side, mapping_, true); }

Payload FieldCodec::translate_back(const Payload& external_side) const {
  return rename(external_side, mapping_, false);
}

}  // namespace zsm
