#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zsm {

enum class ErrorCode {
  // core fabric
  DuplicateDomain,
  UnknownChild,
  UnknownDomain,
  InvalidDomain,
  ForestViolation,
  CycleDetected,
  AccessDenied,
  CapabilityNotFound,
  NotServiceBased,
  CodecMismatch,
  UnknownAdapter,
  // slice model
  HintRequired,
  EmptyTemplate,
  HorizonTooLong,
  InsufficientData,
  UnknownTarget,
  StaticReinstall,
  // nfv
  ValidationFailed,
  Infeasible,
  LifecycleViolation,
  AlreadyScaling,
  CapacityExceeded,
  BelowMinimum,
  // 3gpp management
  UnknownSubnet,
  NotPossible,
  UnknownSlice,
  NotExposed,
  // zsm services
  NoMgmtInterface,
  StaleContext,
  StaleModel,
  PreconditionViolated,
  // scenario
  SyntaxError,
  ValidationError,
  MalformedTrace,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a stable error code. `origin` names the service kind
/// (e.g. `mano.vnfm`) where the failure happened, once known.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string origin = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        origin_(std::move(origin)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& origin() const noexcept { return origin_; }
  void set_origin(std::string origin) { origin_ = std::move(origin); }

 private:
  ErrorCode code_;
  std::string origin_;
};

}  // namespace zsm
