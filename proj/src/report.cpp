#include "distpair/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace distpair {

namespace {

void append_escape(std::string& out, unsigned code) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "\\u%04x", code);
  out += buf;
}

// Length and payload of the UTF-8 sequence starting at s[i]; 0 when malformed.
std::size_t utf8_decode(std::string_view s, std::size_t i, unsigned& code) {
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  const unsigned c = byte(i);
  const std::size_t len = c >= 0xf5 ? 0 : c >= 0xf0 ? 4 : c >= 0xe0 ? 3 : c >= 0xc2 ? 2 : 0;
  if (len == 0 || i + len > s.size()) return 0;
  code = c & (0x7fu >> len);
  for (std::size_t k = 1; k < len; ++k) {
    if ((byte(i + k) & 0xc0) != 0x80) return 0;
    code = (code << 6) | (byte(i + k) & 0x3f);
  }
  const unsigned min_code[] = {0, 0, 0x80, 0x800, 0x10000};
  if (code < min_code[len] || code > 0x10ffff || (code >= 0xd800 && code < 0xe000)) return 0;
  return len;
}

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (std::size_t i = 0; i < s.size();) {
    const unsigned char c = s[i];
    if (c >= 0x80) {
      unsigned code = 0xfffd;
      const std::size_t len = utf8_decode(s, i, code);
      i += len == 0 ? 1 : len;
      if (len == 0) code = 0xfffd;
      if (code >= 0x10000) {
        append_escape(out, 0xd800 + ((code - 0x10000) >> 10));
        append_escape(out, 0xdc00 + ((code - 0x10000) & 0x3ff));
      } else {
        append_escape(out, code);
      }
      continue;
    }
    ++i;
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (c < 0x20 || c == 0x7f) {
          append_escape(out, c);
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out + "\"";
}

std::string json_number(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

std::string json_cell(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) return json_number(*d);
  return json_string(std::get<std::string>(cell));
}

std::string csv_field(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) return format_number(*d);
  const std::string& s = std::get<std::string>(cell);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ReportError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.close();
  if (!out) throw ReportError("failed writing '" + path.string() + "'");
}

}  // namespace

std::string report_json(const RunConfig& config, std::span<const ExperimentResult> results) {
  std::vector<CheckOutcome> all;
  for (const ExperimentResult& r : results) all.insert(all.end(), r.outcomes.begin(), r.outcomes.end());

  std::string j = "{\n";
  j += "  \"schema\": \"distpair-report/1\",\n";
  j += "  \"verdict\": " + json_string(to_string(aggregate(all))) + ",\n";
  j += "  \"exit_code\": " + std::to_string(exit_code(all)) + ",\n";
  j += "  \"config\": {";
  const auto settings = describe(config);
  for (std::size_t i = 0; i < settings.size(); ++i) {
    j += i == 0 ? "\n" : ",\n";
    j += "    " + json_string(settings[i].first) + ": " + json_string(settings[i].second);
  }
  j += "\n  },\n";
  j += "  \"experiments\": [";
  for (std::size_t e = 0; e < results.size(); ++e) {
    const ExperimentResult& r = results[e];
    j += e == 0 ? "\n" : ",\n";
    j += "    {\n";
    j += "      \"name\": " + json_string(r.name) + ",\n";
    j += "      \"verdict\": " + json_string(to_string(aggregate(r.outcomes))) + ",\n";
    j += "      \"csv\": " + json_string(r.name + ".csv") + ",\n";
    j += "      \"checks\": [";
    for (std::size_t c = 0; c < r.outcomes.size(); ++c) {
      const CheckOutcome& o = r.outcomes[c];
      j += c == 0 ? "\n" : ",\n";
      j += "        {\n";
      j += "          \"name\": " + json_string(o.name) + ",\n";
      j += "          \"verdict\": " + json_string(to_string(o.verdict)) + ",\n";
      j += "          \"residual\": " + json_number(o.residual) + ",\n";
      j += "          \"tolerance\": " + json_number(o.tolerance) + ",\n";
      j += "          \"inputs_digest\": " + json_string(o.inputs_digest) + ",\n";
      j += "          \"details\": [";
      for (std::size_t d = 0; d < o.details.size(); ++d) {
        j += d == 0 ? "\n" : ",\n";
        j += "            {";
        const auto& cells = o.details[d].cells;
        for (std::size_t k = 0; k < cells.size(); ++k) {
          if (k > 0) j += ", ";
          j += json_string(cells[k].first) + ": " + json_cell(cells[k].second);
        }
        j += "}";
      }
      j += o.details.empty() ? "]\n" : "\n          ]\n";
      j += "        }";
    }
    j += r.outcomes.empty() ? "]\n" : "\n      ]\n";
    j += "    }";
  }
  j += results.empty() ? "]\n" : "\n  ]\n";
  j += "}\n";
  return j;
}

std::string outcomes_csv(std::span<const CheckOutcome> outcomes) {
  std::vector<std::string> columns;
  for (const CheckOutcome& o : outcomes) {
    for (const DetailRow& row : o.details) {
      for (const auto& [name, cell] : row.cells) {
        if (std::find(columns.begin(), columns.end(), name) == columns.end()) columns.push_back(name);
      }
    }
  }
  std::string out = "check";
  for (const std::string& c : columns) out += "," + c;
  out += "\n";
  for (const CheckOutcome& o : outcomes) {
    for (const DetailRow& row : o.details) {
      out += csv_field(o.name);
      for (const std::string& c : columns) {
        out += ",";
        const auto it = std::find_if(row.cells.begin(), row.cells.end(),
                                     [&](const auto& cell) { return cell.first == c; });
        if (it != row.cells.end()) out += csv_field(it->second);
      }
      out += "\n";
    }
  }
  return out;
}

void emit_report(const std::filesystem::path& dir, const RunConfig& config,
                 std::span<const ExperimentResult> results) {
  if (results.empty()) throw std::invalid_argument("emit_report: no results");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ReportError("cannot create output directory '" + dir.string() + "': " + ec.message());
  write_file(dir / "report.json", report_json(config, results));
  for (const ExperimentResult& r : results) write_file(dir / (r.name + ".csv"), r.csv);
}

}  // namespace distpair
