#include "zsmsim/fabric/trace.hpp"

#include <charconv>

#include <fmt/format.h>

#include "zsmsim/error.hpp"

namespace zsm {

std::string_view ref_kind(std::string_view ref) {
  auto slash = ref.find('/');
  return slash == std::string_view::npos ? ref : ref.substr(slash + 1);
}

std::string_view ref_domain(std::string_view ref) {
  auto slash = ref.find('/');
  return slash == std::string_view::npos ? std::string_view{} : ref.substr(0, slash);
}

std::string sanitize_detail(std::string_view text) {
  std::string out(text);
  for (auto& c : out)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return out;
}

std::size_t Trace::append(TraceRecord record) {
  record.detail = sanitize_detail(record.detail);
  records_.push_back(std::move(record));
  return records_.size() - 1;
}

void Trace::annotate(std::size_t index, std::string_view text) {
  auto& detail = records_.at(index).detail;
  detail += detail.empty() ? "=> " : " => ";
  detail += sanitize_detail(text);
}

std::vector<TraceRecord> Trace::chain(std::string_view correlation_id) const {
  std::vector<TraceRecord> out;
  for (const auto& r : records_)
    if (r.correlation_id == correlation_id) out.push_back(r);
  return out;
}

std::string format_record(const TraceRecord& r) {
  return fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}", r.tick, r.step_label.empty() ? "-" : r.step_label,
                     r.source, r.target, r.correlation_id, r.slice_id.empty() ? "-" : r.slice_id,
                     r.detail);
}

std::string format_trace(const std::vector<TraceRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += format_record(r);
    out += '\n';
  }
  return out;
}

TraceRecord parse_record(std::string_view line, std::size_t line_no) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (fields.size() < 6) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) break;
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  fields.push_back(line.substr(start));
  if (fields.size() != 7)
    throw Error(ErrorCode::MalformedTrace,
                fmt::format("line {}: expected 7 tab-separated fields, found {}", line_no, fields.size()));

  TraceRecord r;
  auto tick_text = fields[0];
  auto [ptr, ec] = std::from_chars(tick_text.data(), tick_text.data() + tick_text.size(), r.tick);
  if (ec != std::errc{} || ptr != tick_text.data() + tick_text.size() || r.tick < 0)
    throw Error(ErrorCode::MalformedTrace, fmt::format("line {}: bad tick '{}'", line_no, tick_text));
  if (fields[2].empty() || fields[3].empty() || fields[4].empty())
    throw Error(ErrorCode::MalformedTrace, fmt::format("line {}: empty source/target/correlation", line_no));
  r.step_label = fields[1] == "-" ? "" : std::string(fields[1]);
  r.source = fields[2];
  r.target = fields[3];
  r.correlation_id = fields[4];
  r.slice_id = fields[5] == "-" ? "" : std::string(fields[5]);
  r.detail = fields[6];
  return r;
}

std::vector<TraceRecord> parse_trace(std::string_view text) {
  std::vector<TraceRecord> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    auto line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++line_no;
    if (!line.empty()) out.push_back(parse_record(line, line_no));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

}  // namespace zsm
