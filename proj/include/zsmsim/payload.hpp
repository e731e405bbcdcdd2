#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace zsm {

/// Operation-specific record carried by a MessageEnvelope: a flat, ordered
/// field map. Typed structures are encoded into it at service boundaries.
class Payload {
 public:
  using Fields = std::map<std::string, std::string>;

  Payload() = default;
  Payload(std::initializer_list<Fields::value_type> init) : fields_(init) {}

  Payload& set(const std::string& key, std::string value) {
    fields_[key] = std::move(value);
    return *this;
  }
  Payload& set(const std::string& key, const char* value) { return set(key, std::string(value)); }
  Payload& set(const std::string& key, std::int64_t value);
  Payload& set(const std::string& key, double value);

  bool has(const std::string& key) const { return fields_.count(key) != 0; }
  std::optional<std::string> find(const std::string& key) const;
  /// Throws PreconditionViolated when the field is absent or malformed.
  const std::string& str(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  double number(const std::string& key) const;
  std::int64_t integer_or(const std::string& key, std::int64_t fallback) const;

  const Fields& fields() const { return fields_; }
  Fields& fields() { return fields_; }
  bool empty() const { return fields_.empty(); }

  friend bool operator==(const Payload&, const Payload&) = default;

 private:
  Fields fields_;
};

/// Shortest round-trip decimal form, shared by payloads and trace details so
/// values re-parse bit-exactly.
std::string format_number(double value);

}  // namespace zsm
