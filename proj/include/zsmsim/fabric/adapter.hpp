#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zsmsim/payload.hpp"

namespace zsm {

/// Declarative bidirectional field map between ZSM-side and external field
/// names. Construction rejects non-bijective maps.
class FieldCodec {
 public:
  FieldCodec() = default;
  explicit FieldCodec(std::vector<std::pair<std::string, std::string>> zsm_to_external);

  /// ZSM names -> external names. Throws CodecMismatch on an unmapped field.
  Payload translate(const Payload& zsm_side) const;
  /// External names -> ZSM names. Throws CodecMismatch on an unmapped field.
  Payload translate_back(const Payload& external_side) const;

  const std::vector<std::pair<std::string, std::string>>& mapping() const { return mapping_; }

 private:
  std::vector<std::pair<std::string, std::string>> mapping_;
};

struct AdapterBinding {
  std::string adapter_id;
  std::string zsm_capability;      // service-based capability the adapter offers
  std::string external_operation;  // capability name in the external system
  std::string external_domain;     // domain hosting the external operation
  FieldCodec codec;
};

}  // namespace zsm
