#include "qontext/report.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qontext::cli {

bool Report::all_pass() const {
  return std::all_of(findings.begin(), findings.end(), [](const Finding& f) { return f.pass; });
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return fnv1a_hex(buf.str());
}

void render_text(const Report& report, std::ostream& out) {
  out << "qontext " << report.command << '\n';
  if (report.timestamp) out << "timestamp: " << *report.timestamp << '\n';
  for (const InputFile& input : report.inputs)
    out << "input: " << input.path << " fnv1a:" << input.digest << '\n';
  for (const Finding& f : report.findings)
    out << "finding: " << f.name << " = " << f.value << (f.pass ? " [pass]" : " [FAIL]") << '\n';
  for (const TableData& t : report.tables) {
    out << "table " << t.name << ":\n";
    if (t.csv) {
      for (std::size_t c = 0; c < t.columns.size(); ++c)
        out << t.columns[c] << (c + 1 == t.columns.size() ? "" : ",");
      out << '\n';
      for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
          out << row[c] << (c + 1 == row.size() ? "" : ",");
        out << '\n';
      }
      continue;
    }
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
    for (const auto& row : t.rows)
      for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
        width[c] = std::max(width[c], row[c].size());
    auto emit_row = [&](const std::vector<std::string>& cells) {
      out << " ";
      for (std::size_t c = 0; c < cells.size(); ++c) {
        out << ' ';
        for (std::size_t pad = cells[c].size(); pad < width[c]; ++pad) out << ' ';
        out << cells[c];
      }
      out << '\n';
    };
    emit_row(t.columns);
    for (const auto& row : t.rows) emit_row(row);
  }
  out << "result: " << (report.all_pass() ? "PASS" : "FAIL") << '\n';
}

nlohmann::ordered_json to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["command"] = report.command;
  if (report.timestamp) j["timestamp"] = *report.timestamp;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const InputFile& input : report.inputs)
    j["inputs"].push_back({{"path", input.path}, {"digest", input.digest}});
  j["findings"] = nlohmann::ordered_json::array();
  for (const Finding& f : report.findings)
    j["findings"].push_back({{"name", f.name}, {"value", f.value}, {"pass", f.pass}});
  j["tables"] = nlohmann::ordered_json::array();
  for (const TableData& t : report.tables)
    j["tables"].push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}});
  j["pass"] = report.all_pass();
  return j;
}

}  // namespace qontext::cli
