#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "zsmsim/types.hpp"

namespace zsm {

/// One timestamped service-to-service interaction.
struct TraceRecord {
  Tick tick = 0;
  std::string step_label;  // empty when the record carries no step tag
  std::string source;      // "<domain>/<service>"
  std::string target;      // "<domain>/<capability>"
  std::string correlation_id;
  std::string slice_id;  // empty when not slice-scoped
  std::string detail;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

/// Service kind of a "<domain>/<name>" reference (the part after '/').
std::string_view ref_kind(std::string_view ref);
/// Domain of a "<domain>/<name>" reference.
std::string_view ref_domain(std::string_view ref);

/// Append-only record log in scheduler order.
class Trace {
 public:
  std::size_t append(TraceRecord record);
  /// Appends " => <text>" to the detail of a previously appended record.
  void annotate(std::size_t index, std::string_view text);

  const std::vector<TraceRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  std::vector<TraceRecord> chain(std::string_view correlation_id) const;

 private:
  std::vector<TraceRecord> records_;
};

/// Tab-separated line: tick, label (or '-'), source, target, correlation,
/// slice (or '-'), detail.
std::string format_record(const TraceRecord& record);
std::string format_trace(const std::vector<TraceRecord>& records);
/// Throws MalformedTrace naming the offending line.
TraceRecord parse_record(std::string_view line, std::size_t line_no = 0);
std::vector<TraceRecord> parse_trace(std::string_view text);

/// Replaces tabs and newlines so detail text stays on one field.
std::string sanitize_detail(std::string_view text);

}  // namespace zsm
