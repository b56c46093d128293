#pragma once

// Measurement scenarios as hypergraphs: observables are vertices, contexts
// (jointly measurable subsets) are hyperedges. Parsed from a line-oriented
// text format, serialized bit-exactly for stable diffs.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qontext::scenario {

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {}
  std::size_t line;
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& message) : std::runtime_error(message) {}
};

struct UnknownObservableError : std::runtime_error {
  explicit UnknownObservableError(const std::string& id)
      : std::runtime_error("unknown observable '" + id + "'") {}
};

enum class Kind { ks_coloring, correlation };

std::string_view to_string(Kind k);

struct Observable {
  std::string id;
  int outcome_count = 2;

  friend bool operator==(const Observable&, const Observable&) = default;
};

// Members are kept in declaration order for deterministic reports; semantic
// equality of contexts ignores order.
struct Context {
  std::vector<std::string> members;

  friend bool operator==(const Context&, const Context&) = default;
};

bool same_members(const Context& a, const Context& b);

struct Scenario {
  Kind kind = Kind::ks_coloring;
  std::vector<Observable> observables;
  std::vector<Context> contexts;

  bool has_observable(const std::string& id) const;
  const Observable& observable(const std::string& id) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// All contexts a single observable participates in, seen from that
// observable: one companion list per context, each holding the partners it
// is jointly measured with.
struct ContextFamily {
  std::string base_observable;
  std::vector<std::vector<std::string>> companions;
};

// Grammar (UTF-8, line oriented):
//   scenario <ks_coloring|correlation>
//   obs <id> <outcome_count>
//   ctx <id_1> ... <id_k>
// '#' starts a comment, blank lines are ignored.
// Throws ParseError (with line number) or ValidationError.
Scenario parse_scenario(std::string_view text);

// Declaration order, single spaces, '\n' terminated; parse(serialize(s)) == s.
std::string serialize_scenario(const Scenario& s);

Scenario load_scenario(const std::string& path);

// Number of contexts each observable occurs in.
std::map<std::string, int> occurrence_counts(const Scenario& s);

// All contexts containing id, in declaration order. Throws UnknownObservableError.
std::vector<Context> contexts_of(const Scenario& s, const std::string& id);

// Throws UnknownObservableError; throws ValidationError when the observable
// sits in no context (a family must have companions).
ContextFamily context_family(const Scenario& s, const std::string& id);

}  // namespace qontext::scenario
