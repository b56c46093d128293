#include "qontext/ks.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qontext::ks {

using scenario::Kind;
using scenario::Scenario;

ParityCertificate parity_check(const Scenario& s) {
  if (s.kind != Kind::ks_coloring) throw WrongScenarioKindError(scenario::to_string(s.kind));
  ParityCertificate cert;
  cert.context_count = static_cast<int>(s.contexts.size());
  cert.per_observable_occurrences = scenario::occurrence_counts(s);
  cert.all_even = std::all_of(cert.per_observable_occurrences.begin(),
                              cert.per_observable_occurrences.end(),
                              [](const auto& kv) { return kv.second % 2 == 0; });
  cert.contexts_odd = cert.context_count % 2 == 1;
  cert.contradiction_established = cert.all_even && cert.contexts_odd;
  return cert;
}

namespace {

struct SearchState {
  const Scenario& s;
  std::vector<std::vector<std::size_t>> contexts_by_obs;  // observable -> context indices
  std::vector<int> context_size;
  std::vector<int> context_ones;
  std::vector<int> context_assigned;
  std::vector<int> value;  // -1 unassigned
  std::uint64_t examined = 0;

  explicit SearchState(const Scenario& scn) : s(scn) {
    contexts_by_obs.resize(s.observables.size());
    context_size.reserve(s.contexts.size());
    for (std::size_t c = 0; c < s.contexts.size(); ++c) {
      context_size.push_back(static_cast<int>(s.contexts[c].members.size()));
      for (const std::string& m : s.contexts[c].members) {
        for (std::size_t o = 0; o < s.observables.size(); ++o) {
          if (s.observables[o].id == m) {
            contexts_by_obs[o].push_back(c);
            break;
          }
        }
      }
    }
    context_ones.assign(s.contexts.size(), 0);
    context_assigned.assign(s.contexts.size(), 0);
    value.assign(s.observables.size(), -1);
  }

  bool feasible_after(std::size_t obs) const {
    for (std::size_t c : contexts_by_obs[obs]) {
      if (context_ones[c] > 1) return false;
      const int unassigned = context_size[c] - context_assigned[c];
      if (context_ones[c] + unassigned < 1) return false;
    }
    return true;
  }

  bool search(std::size_t obs) {
    if (obs == s.observables.size()) return true;
    for (int v : {1, 0}) {
      ++examined;
      value[obs] = v;
      for (std::size_t c : contexts_by_obs[obs]) {
        context_ones[c] += v;
        ++context_assigned[c];
      }
      if (feasible_after(obs) && search(obs + 1)) return true;
      for (std::size_t c : contexts_by_obs[obs]) {
        context_ones[c] -= v;
        --context_assigned[c];
      }
      value[obs] = -1;
    }
    return false;
  }
};

}  // namespace

ColoringResult exhaustive_coloring(const Scenario& s) {
  if (s.kind != Kind::ks_coloring) throw WrongScenarioKindError(scenario::to_string(s.kind));
  if (s.observables.size() > 30) throw TooLargeError(s.observables.size());

  SearchState state(s);
  ColoringResult result;
  result.satisfiable = state.search(0);
  result.assignments_examined = state.examined;
  if (result.satisfiable) {
    std::map<std::string, int> witness;
    for (std::size_t o = 0; o < s.observables.size(); ++o)
      witness[s.observables[o].id] = state.value[o];
    result.witness = std::move(witness);
  }
  return result;
}

namespace {

std::complex<double> parse_complex(const std::string& token, std::size_t line_no) {
  const auto comma = token.find(',');
  if (comma == std::string::npos)
    throw scenario::ParseError(line_no, "expected 're,im', got '" + token + "'");
  try {
    std::size_t pos = 0;
    const double re = std::stod(token.substr(0, comma), &pos);
    if (pos != comma) throw std::invalid_argument("");
    const std::string imag_part = token.substr(comma + 1);
    const double im = std::stod(imag_part, &pos);
    if (pos != imag_part.size()) throw std::invalid_argument("");
    return {re, im};
  } catch (const std::exception&) {
    throw scenario::ParseError(line_no, "bad complex literal '" + token + "'");
  }
}

}  // namespace

VectorRealization parse_realization(std::string_view text) {
  VectorRealization r;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok != "vec") throw scenario::ParseError(line_no, "unknown directive '" + tok + "'");
    std::string id;
    if (!(ls >> id)) throw scenario::ParseError(line_no, "missing observable id");
    std::vector<std::complex<double>> comps;
    while (ls >> tok) comps.push_back(parse_complex(tok, line_no));
    if (comps.empty()) throw scenario::ParseError(line_no, "vector for '" + id + "' has no components");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(comps.size()));
    for (std::size_t i = 0; i < comps.size(); ++i) v(static_cast<Eigen::Index>(i)) = comps[i];
    if (v.norm() == 0.0) throw scenario::ParseError(line_no, "vector for '" + id + "' is zero");
    if (r.dimension == 0) r.dimension = v.size();
    if (v.size() != r.dimension)
      throw DimensionMismatchError("vector for '" + id + "' has dimension " +
                                   std::to_string(v.size()) + ", expected " +
                                   std::to_string(r.dimension));
    if (!r.vectors.emplace(id, std::move(v)).second)
      throw scenario::ParseError(line_no, "duplicate vector for '" + id + "'");
  }
  return r;
}

VectorRealization load_realization(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw scenario::ValidationError("cannot open realization file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_realization(buf.str());
}

RealizationReport validate_realization(const Scenario& s, const VectorRealization& r, double tol) {
  for (const scenario::Observable& o : s.observables)
    if (!r.vectors.contains(o.id)) throw MissingVectorError(o.id);

  RealizationReport report;
  report.per_context.reserve(s.contexts.size());
  for (std::size_t c = 0; c < s.contexts.size(); ++c) {
    const scenario::Context& ctx = s.contexts[c];
    std::vector<Eigen::VectorXcd> members;
    members.reserve(ctx.members.size());
    for (const std::string& id : ctx.members) {
      const Eigen::VectorXcd& v = r.vectors.at(id);
      if (v.size() != r.dimension)
        throw DimensionMismatchError("vector for '" + id + "' has dimension " +
                                     std::to_string(v.size()));
      members.push_back(v.normalized());
    }

    double deviation = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        deviation = std::max(deviation, std::abs(members[i].dot(members[j])));

    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(r.dimension, r.dimension);
    for (const Eigen::VectorXcd& v : members) sum += v * v.adjoint();
    sum -= Eigen::MatrixXcd::Identity(r.dimension, r.dimension);
    deviation = std::max(deviation, sum.cwiseAbs().maxCoeff());

    report.per_context.push_back(ContextDeviation{c, deviation});
    report.worst_deviation = std::max(report.worst_deviation, deviation);
  }
  report.valid = report.worst_deviation <= tol;
  return report;
}

}  // namespace qontext::ks
