#pragma once

// Deterministic report carrier for the CLI: findings (named checks with a
// rendered value and a pass flag), string tables, and input-file digests.
// Identical inputs and flags produce byte-identical text and JSON; nothing
// time- or locale-dependent enters unless --timestamps opts in.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qontext::cli {

struct Finding {
  std::string name;
  std::string value;
  bool pass = true;
};

struct TableData {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  bool csv = false;  // render comma-separated instead of aligned
};

struct InputFile {
  std::string path;
  std::string digest;
};

struct Report {
  std::string command;
  std::vector<InputFile> inputs;
  std::vector<Finding> findings;
  std::vector<TableData> tables;
  std::optional<std::string> timestamp;

  bool all_pass() const;
};

// Shortest round-trip-safe decimal rendering used everywhere a double is
// reported ("%.17g").
std::string format_double(double v);

// FNV-1a 64-bit over raw bytes, 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);
std::string digest_file(const std::string& path);

void render_text(const Report& report, std::ostream& out);
nlohmann::ordered_json to_json(const Report& report);

}  // namespace qontext::cli
