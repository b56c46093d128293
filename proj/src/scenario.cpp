#include "qontext/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace qontext::scenario {

std::string_view to_string(Kind k) {
  return k == Kind::ks_coloring ? "ks_coloring" : "correlation";
}

bool same_members(const Context& a, const Context& b) {
  if (a.members.size() != b.members.size()) return false;
  std::vector<std::string> x = a.members, y = b.members;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

bool Scenario::has_observable(const std::string& id) const {
  return std::any_of(observables.begin(), observables.end(),
                     [&](const Observable& o) { return o.id == id; });
}

const Observable& Scenario::observable(const std::string& id) const {
  for (const Observable& o : observables)
    if (o.id == id) return o;
  throw UnknownObservableError(id);
}

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  // Strip comment, then split on whitespace.
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> tokens;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

void validate(const Scenario& s) {
  std::set<std::string> ids;
  for (const Observable& o : s.observables) {
    if (!ids.insert(o.id).second)
      throw ValidationError("duplicate observable id '" + o.id + "'");
    if (o.outcome_count != 2)
      throw ValidationError("observable '" + o.id + "' has outcome_count " +
                            std::to_string(o.outcome_count) + "; this scenario kind requires 2");
  }
  for (std::size_t c = 0; c < s.contexts.size(); ++c) {
    const Context& ctx = s.contexts[c];
    if (ctx.members.empty())
      throw ValidationError("context " + std::to_string(c + 1) + " is empty");
    std::set<std::string> seen;
    for (const std::string& m : ctx.members) {
      if (!ids.contains(m))
        throw ValidationError("context " + std::to_string(c + 1) +
                              " references undeclared observable '" + m + "'");
      if (!seen.insert(m).second)
        throw ValidationError("context " + std::to_string(c + 1) + " repeats member '" + m + "'");
    }
  }
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  bool have_header = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok[0] != "scenario" || tok.size() != 2)
        throw ParseError(line_no, "expected 'scenario <kind>' as first directive");
      if (tok[1] == "ks_coloring")
        s.kind = Kind::ks_coloring;
      else if (tok[1] == "correlation")
        s.kind = Kind::correlation;
      else
        throw ParseError(line_no, "unknown scenario kind '" + tok[1] + "'");
      have_header = true;
    } else if (tok[0] == "obs") {
      if (tok.size() != 3) throw ParseError(line_no, "expected 'obs <id> <outcome_count>'");
      int d = 0;
      try {
        std::size_t pos = 0;
        d = std::stoi(tok[2], &pos);
        if (pos != tok[2].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError(line_no, "outcome count '" + tok[2] + "' is not an integer");
      }
      s.observables.push_back(Observable{tok[1], d});
    } else if (tok[0] == "ctx") {
      if (tok.size() < 2) throw ParseError(line_no, "context needs at least one member");
      s.contexts.push_back(Context{{tok.begin() + 1, tok.end()}});
    } else {
      throw ParseError(line_no, "unknown directive '" + tok[0] + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'scenario <kind>' header");
  validate(s);
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  std::string out = "scenario ";
  out += to_string(s.kind);
  out += '\n';
  for (const Observable& o : s.observables) {
    out += "obs " + o.id + ' ' + std::to_string(o.outcome_count) + '\n';
  }
  for (const Context& c : s.contexts) {
    out += "ctx";
    for (const std::string& m : c.members) out += ' ' + m;
    out += '\n';
  }
  return out;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::map<std::string, int> occurrence_counts(const Scenario& s) {
  std::map<std::string, int> counts;
  for (const Observable& o : s.observables) counts[o.id] = 0;
  for (const Context& c : s.contexts)
    for (const std::string& m : c.members) ++counts[m];
  return counts;
}

std::vector<Context> contexts_of(const Scenario& s, const std::string& id) {
  if (!s.has_observable(id)) throw UnknownObservableError(id);
  std::vector<Context> result;
  for (const Context& c : s.contexts)
    if (std::find(c.members.begin(), c.members.end(), id) != c.members.end()) result.push_back(c);
  return result;
}

ContextFamily context_family(const Scenario& s, const std::string& id) {
  ContextFamily family{id, {}};
  for (const Context& c : contexts_of(s, id)) {
    std::vector<std::string> partners;
    for (const std::string& m : c.members)
      if (m != id) partners.push_back(m);
    family.companions.push_back(std::move(partners));
  }
  if (family.companions.empty())
    throw ValidationError("observable '" + id + "' occurs in no context");
  return family;
}

}  // namespace qontext::scenario
