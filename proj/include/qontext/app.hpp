#pragma once

// Command-line front end: subcommand parsing, input resolution against the
// bundled data directory, and report emission.
//
// Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
// input parse/validation errors.

#include <iosfwd>
#include <string>
#include <vector>

namespace qontext::cli {

// QONTEXT_DATA_DIR when set, otherwise the bundled data directory.
std::string data_dir();

// The path itself when it exists, otherwise the same name under data_dir().
std::string resolve_input(const std::string& path);

// Arguments exclude the program name. Reports go to `out`, errors to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qontext::cli
