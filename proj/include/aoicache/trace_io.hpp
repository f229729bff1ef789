#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "aoicache/state.hpp"

namespace aoicache {

// Trace CSV layout:
//   slot,reward,aoi_utility,mbs_cost,cumulative_reward,updates_issued,
//   aoi_<k>_<j> for every RSU k and coverage position j (content k * L' + j),
//   q_<k>,served_<k> for every RSU k.
// Doubles use the shortest decimal form that round-trips; lines end in LF.

inline std::vector<std::string> trace_header(const SystemConfig& cfg) {
  std::vector<std::string> cols = {"slot",          "reward",           "aoi_utility",
                                   "mbs_cost",      "cumulative_reward", "updates_issued"};
  for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
    for (std::size_t j = 0; j < cfg.regions_per_rsu; ++j) {
      cols.push_back("aoi_" + std::to_string(k) + "_" + std::to_string(j));
    }
  }
  for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
    cols.push_back("q_" + std::to_string(k));
    cols.push_back("served_" + std::to_string(k));
  }
  return cols;
}

inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

// RFC-4180: quote a field containing a comma, quote, CR or LF; double embedded quotes.
inline std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string format_traces_csv(const std::vector<SlotTrace>& traces, const SystemConfig& cfg) {
  std::string out;
  const auto header = trace_header(cfg);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += csv_field(header[i]);
  }
  out += '\n';
  const std::size_t samples = cfg.num_rsus * cfg.regions_per_rsu;
  for (const auto& tr : traces) {
    if (tr.rsu_aoi_samples.size() != samples || tr.backlog.size() != cfg.num_rsus ||
        tr.served.size() != cfg.num_rsus) {
      throw Error(ErrorKind::LengthMismatch, "trace row does not match config layout");
    }
    out += std::to_string(tr.slot);
    for (double v : {tr.reward, tr.aoi_utility, tr.mbs_cost, tr.cumulative_reward}) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += std::to_string(tr.updates_issued);
    for (Slots a : tr.rsu_aoi_samples) {
      out += ',';
      out += std::to_string(a);
    }
    for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
      out += ',';
      out += format_double(tr.backlog[k]);
      out += ',';
      out += std::to_string(tr.served[k]);
    }
    out += '\n';
  }
  return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoFailure, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::IoFailure, "write to '" + path + "' failed");
}

inline void write_traces(const std::vector<SlotTrace>& traces, const SystemConfig& cfg,
                         const std::string& path) {
  write_text_file(path, format_traces_csv(traces, cfg));
}

// Splits one CSV record, honouring RFC-4180 quoting.
inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

namespace detail {

template <typename T>
T parse_number(const std::string& s) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::ParseError, "bad numeric field '" + s + "'");
  }
  return value;
}

}  // namespace detail

struct TraceTable {
  std::vector<std::string> header;
  std::vector<SlotTrace> rows;  // CSV-backed fields only
};

inline TraceTable parse_traces_csv(std::string_view text, const SystemConfig& cfg) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  if (lines.empty()) throw Error(ErrorKind::ParseError, "empty trace file");

  TraceTable table;
  table.header = split_csv_line(lines.front());
  if (table.header != trace_header(cfg)) {
    throw Error(ErrorKind::ParseError, "trace header does not match config layout");
  }
  const std::size_t samples = cfg.num_rsus * cfg.regions_per_rsu;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv_line(lines[i]);
    if (f.size() != table.header.size()) {
      throw Error(ErrorKind::ParseError, "row " + std::to_string(i) + " has wrong field count");
    }
    SlotTrace tr;
    tr.slot = detail::parse_number<std::int64_t>(f[0]);
    tr.reward = detail::parse_number<double>(f[1]);
    tr.aoi_utility = detail::parse_number<double>(f[2]);
    tr.mbs_cost = detail::parse_number<double>(f[3]);
    tr.cumulative_reward = detail::parse_number<double>(f[4]);
    tr.updates_issued = detail::parse_number<std::int64_t>(f[5]);
    std::size_t col = 6;
    for (std::size_t s = 0; s < samples; ++s) {
      tr.rsu_aoi_samples.push_back(detail::parse_number<Slots>(f[col++]));
    }
    for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
      tr.backlog.push_back(detail::parse_number<double>(f[col++]));
      tr.served.push_back(detail::parse_number<std::int64_t>(f[col++]));
    }
    table.rows.push_back(std::move(tr));
  }
  return table;
}

inline TraceTable read_traces(const std::string& path, const SystemConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_traces_csv(buffer.str(), cfg);
}

}  // namespace aoicache
