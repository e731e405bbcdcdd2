#include <algorithm>
#include <cctype>
#include <charconv>

#include <fmt/format.h>

#include "zsmsim/error.hpp"
#include "zsmsim/payload.hpp"
#include "zsmsim/telemetry.hpp"
#include "zsmsim/types.hpp"

namespace zsm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateDomain: return "DuplicateDomain";
    case ErrorCode::UnknownChild: return "UnknownChild";
    case ErrorCode::UnknownDomain: return "UnknownDomain";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::ForestViolation: return "ForestViolation";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::AccessDenied: return "AccessDenied";
    case ErrorCode::CapabilityNotFound: return "CapabilityNotFound";
    case ErrorCode::NotServiceBased: return "NotServiceBased";
    case ErrorCode::CodecMismatch: return "CodecMismatch";
    case ErrorCode::UnknownAdapter: return "UnknownAdapter";
    case ErrorCode::HintRequired: return "HintRequired";
    case ErrorCode::EmptyTemplate: return "EmptyTemplate";
    case ErrorCode::HorizonTooLong: return "HorizonTooLong";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::StaticReinstall: return "StaticReinstall";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::LifecycleViolation: return "LifecycleViolation";
    case ErrorCode::AlreadyScaling: return "AlreadyScaling";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::BelowMinimum: return "BelowMinimum";
    case ErrorCode::UnknownSubnet: return "UnknownSubnet";
    case ErrorCode::NotPossible: return "NotPossible";
    case ErrorCode::UnknownSlice: return "UnknownSlice";
    case ErrorCode::NotExposed: return "NotExposed";
    case ErrorCode::NoMgmtInterface: return "NoMgmtInterface";
    case ErrorCode::StaleContext: return "StaleContext";
    case ErrorCode::StaleModel: return "StaleModel";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::MalformedTrace: return "MalformedTrace";
  }
  return "Unknown";
}

std::string_view to_string(DeploymentOption option) {
  switch (option) {
    case DeploymentOption::Integrated1A: return "1A";
    case DeploymentOption::Integrated1B: return "1B";
    case DeploymentOption::Complementary2: return "2";
  }
  return "?";
}

DeploymentOption parse_option(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "1A") return DeploymentOption::Integrated1A;
  if (upper == "1B") return DeploymentOption::Integrated1B;
  if (upper == "2") return DeploymentOption::Complementary2;
  throw Error(ErrorCode::ValidationError, fmt::format("unknown deployment option '{}'", text));
}

std::string ResourceProfile::str() const {
  return fmt::format("vcpu={} memory_mib={} storage_gib={}", vcpu, memory_mib, storage_gib);
}

ResourceProfile component_min(const ResourceProfile& a, const ResourceProfile& b) {
  return {std::min(a.vcpu, b.vcpu), std::min(a.memory_mib, b.memory_mib),
          std::min(a.storage_gib, b.storage_gib)};
}

std::string format_number(double value) { return fmt::format("{}", value); }

Payload& Payload::set(const std::string& key, std::int64_t value) {
  fields_[key] = std::to_string(value);
  return *this;
}

Payload& Payload::set(const std::string& key, double value) {
  fields_[key] = format_number(value);
  return *this;
}

std::optional<std::string> Payload::find(const std::string& key) const {
  auto it = fields_.find(key);
  if (it == fields_.end()) return std::nullopt;
  return it->second;
}

const std::string& Payload::str(const std::string& key) const {
  auto it = fields_.find(key);
  if (it == fields_.end())
    throw Error(ErrorCode::PreconditionViolated, fmt::format("payload field '{}' missing", key));
  return it->second;
}

std::int64_t Payload::integer(const std::string& key) const {
  const auto& text = str(key);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw Error(ErrorCode::PreconditionViolated,
                fmt::format("payload field '{}' is not an integer: '{}'", key, text));
  return value;
}

std::int64_t Payload::integer_or(const std::string& key, std::int64_t fallback) const {
  return has(key) ? integer(key) : fallback;
}

double Payload::number(const std::string& key) const {
  const auto& text = str(key);
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw Error(ErrorCode::PreconditionViolated,
                fmt::format("payload field '{}' is not a number: '{}'", key, text));
  }
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::ResponseTimeMs: return "ResponseTimeMs";
    case Metric::UtilizationRatio: return "UtilizationRatio";
  }
  return "?";
}

Metric parse_metric(std::string_view text) {
  if (text == "ResponseTimeMs") return Metric::ResponseTimeMs;
  if (text == "UtilizationRatio") return Metric::UtilizationRatio;
  throw Error(ErrorCode::PreconditionViolated, fmt::format("unknown metric '{}'", text));
}

}  // namespace zsm
