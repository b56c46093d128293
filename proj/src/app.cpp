#include "qontext/app.hpp"

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "qontext/fock.hpp"
#include "qontext/hilbert.hpp"
#include "qontext/inequality.hpp"
#include "qontext/ks.hpp"
#include "qontext/qset.hpp"
#include "qontext/report.hpp"
#include "qontext/scenario.hpp"

#ifndef QONTEXT_BUNDLED_DATA_DIR
#define QONTEXT_BUNDLED_DATA_DIR "data"
#endif

namespace qontext::cli {

namespace {

std::string sign_str(int v) { return v == 1 ? "+1" : "-1"; }

std::string bool_str(bool v) { return v ? "true" : "false"; }

void add_input(Report& report, const std::string& path) {
  report.inputs.push_back(InputFile{path, digest_file(path)});
}

TableData product_table(const std::string& name,
                        const std::vector<inequality::ProductTriple>& rows) {
  TableData t{name, {"XY", "XZ", "YZ", "origin"}, {}, false};
  for (const auto& row : rows)
    t.rows.push_back({sign_str(row.xy), sign_str(row.xz), sign_str(row.yz),
                      row.origin == inequality::Origin::classical ? "classical" : "quasi"});
  return t;
}

Report run_ks_verify(const std::string& scenario_arg, const std::optional<std::string>& vectors_arg,
                     double tol) {
  Report report;
  report.command = "ks-verify";
  const std::string scenario_path = resolve_input(scenario_arg);
  add_input(report, scenario_path);
  const scenario::Scenario s = scenario::load_scenario(scenario_path);

  const ks::ParityCertificate parity = ks::parity_check(s);
  const ks::ColoringResult coloring = ks::exhaustive_coloring(s);

  report.findings.push_back({"observables", std::to_string(s.observables.size()), true});
  report.findings.push_back({"contexts", std::to_string(parity.context_count), true});
  report.findings.push_back({"parity_all_even", bool_str(parity.all_even), true});
  report.findings.push_back({"parity_contexts_odd", bool_str(parity.contexts_odd), true});
  // Parity may only claim a contradiction when the search confirms it.
  report.findings.push_back({"parity_contradiction", bool_str(parity.contradiction_established),
                             !(parity.contradiction_established && coloring.satisfiable)});
  report.findings.push_back({"satisfiable", bool_str(coloring.satisfiable), !coloring.satisfiable});
  report.findings.push_back(
      {"assignments_examined", std::to_string(coloring.assignments_examined), true});

  TableData occ{"occurrences", {"observable", "contexts"}, {}, false};
  for (const auto& [id, count] : parity.per_observable_occurrences)
    occ.rows.push_back({id, std::to_string(count)});
  report.tables.push_back(std::move(occ));

  if (coloring.witness) {
    TableData witness{"witness", {"observable", "value"}, {}, false};
    for (const auto& [id, value] : *coloring.witness)
      witness.rows.push_back({id, std::to_string(value)});
    report.tables.push_back(std::move(witness));
  }

  if (vectors_arg) {
    const std::string vec_path = resolve_input(*vectors_arg);
    add_input(report, vec_path);
    const ks::VectorRealization realization = ks::load_realization(vec_path);
    const ks::RealizationReport check = ks::validate_realization(s, realization, tol);
    report.findings.push_back({"realization_valid", bool_str(check.valid), check.valid});
    report.findings.push_back(
        {"realization_worst_deviation", format_double(check.worst_deviation), check.valid});
  }
  return report;
}

Report run_inequality(const std::string& selection) {
  Report report;
  report.command = "inequality";

  const auto [cmin, cmax] = inequality::classical_bounds();
  const auto [qmin, qmax] = inequality::quasi_bounds();
  const auto classical = inequality::classical_table();
  const auto quasi = inequality::quasi_table();
  const auto forbidden = inequality::forbidden_rows();

  const bool products_one =
      std::all_of(classical.begin(), classical.end(),
                  [](const auto& row) { return row.second.product() == 1; });

  report.findings.push_back({"classical_min", std::to_string(cmin), cmin == -1});
  report.findings.push_back({"classical_max", std::to_string(cmax), cmax == 3});
  report.findings.push_back({"classical_rows", std::to_string(classical.size()),
                             classical.size() == 8});
  report.findings.push_back({"classical_products_all_one", bool_str(products_one), products_one});
  report.findings.push_back({"quasi_min", std::to_string(qmin), qmin == -3});
  report.findings.push_back({"quasi_max", std::to_string(qmax), qmax == 3});
  report.findings.push_back({"quasi_rows", std::to_string(quasi.size()), quasi.size() == 8});
  report.findings.push_back({"forbidden_rows", std::to_string(forbidden.size()),
                             forbidden.size() == 4});
  report.findings.push_back({"classical_lower_bound_violated", bool_str(qmin < cmin), qmin < cmin});

  if (selection == "all" || selection == "classical") {
    TableData t{"classical_valuations", {"X", "Y", "Z", "XY", "XZ", "YZ", "origin"}, {}, false};
    for (const auto& [signs, products] : classical)
      t.rows.push_back({sign_str(signs.x), sign_str(signs.y), sign_str(signs.z),
                        sign_str(products.xy), sign_str(products.xz), sign_str(products.yz),
                        "classical"});
    report.tables.push_back(std::move(t));
  }
  if (selection == "all" || selection == "quasi")
    report.tables.push_back(product_table("quasi_valuations", quasi));
  if (selection == "all" || selection == "forbidden")
    report.tables.push_back(product_table("forbidden_rows", forbidden));
  return report;
}

Report run_qfunctions(std::uint64_t qcard, int outcomes) {
  Report report;
  report.command = "qfunctions";
  const qset::QSet cls = qset::make_class("A", qcard);
  const auto functions = qset::enumerate_qfunctions(cls, outcomes);
  const qset::Count classical = qset::classical_function_count(qcard, outcomes);

  report.findings.push_back({"class_qcard", std::to_string(qcard), true});
  report.findings.push_back({"outcome_count", std::to_string(outcomes), true});
  report.findings.push_back({"quasi_function_count", std::to_string(functions.size()),
                             functions.size() == static_cast<std::size_t>(outcomes)});
  report.findings.push_back({"classical_valuation_count", classical.str(), true});
  if (qcard >= 1) {
    const qset::Count collapse = qset::classical_function_count(qcard - 1, outcomes);
    report.findings.push_back(
        {"collapse_factor", collapse.str(), collapse * outcomes == classical});
  }

  TableData t{"quasi_functions", {"class", "constant_value"}, {}, false};
  for (const auto& f : functions)
    t.rows.push_back({"[" + f.domain.class_label + "]", std::to_string(f.constant_value)});
  report.tables.push_back(std::move(t));
  return report;
}

Report run_fock(int dim, int particles) {
  Report report;
  report.command = "fock";
  const auto [sym_dim, antisym_dim] = fock::sector_dimensions(dim, particles);
  report.findings.push_back({"symmetric_dim", std::to_string(sym_dim), true});
  report.findings.push_back({"antisymmetric_dim", std::to_string(antisym_dim), true});

  long long total = 1;
  for (int k = 0; k < particles && total <= 256; ++k) total *= dim;
  if (total <= 256) {
    const Eigen::MatrixXd sym = fock::symmetrizer_matrix(dim, particles);
    const Eigen::MatrixXd antisym = fock::antisymmetrizer_matrix(dim, particles);
    const double sym_idem = (sym * sym - sym).cwiseAbs().maxCoeff();
    const double antisym_idem = (antisym * antisym - antisym).cwiseAbs().maxCoeff();
    // Both projectors are the identity below two particles; the sectors are
    // only orthogonal once a transposition exists.
    const double cross = particles >= 2 ? (sym * antisym).cwiseAbs().maxCoeff() : 0.0;
    auto rank = [](const Eigen::MatrixXd& p) {
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(p, Eigen::EigenvaluesOnly);
      return static_cast<long long>((eig.eigenvalues().array() > 0.5).count());
    };
    const long long sym_rank = rank(sym);
    const long long antisym_rank = rank(antisym);
    report.findings.push_back(
        {"symmetrizer_idempotency_deviation", format_double(sym_idem), sym_idem <= 1e-12});
    report.findings.push_back({"antisymmetrizer_idempotency_deviation",
                               format_double(antisym_idem), antisym_idem <= 1e-12});
    report.findings.push_back(
        {"cross_projector_deviation", format_double(cross), cross <= 1e-12});
    report.findings.push_back(
        {"symmetrizer_rank", std::to_string(sym_rank), sym_rank == sym_dim});
    report.findings.push_back(
        {"antisymmetrizer_rank", std::to_string(antisym_rank), antisym_rank == antisym_dim});
  } else {
    report.findings.push_back(
        {"projector_checks", "skipped: total dimension exceeds 256", true});
  }

  TableData t{"sector_dimensions", {"particles", "boson_dim", "fermion_dim"}, {}, false};
  const auto bosons = fock::fock_truncation(dim, particles, fock::Statistics::boson);
  const auto fermions = fock::fock_truncation(dim, particles, fock::Statistics::fermion);
  for (int n = 0; n <= particles; ++n)
    t.rows.push_back({std::to_string(n), std::to_string(bosons[static_cast<std::size_t>(n)]),
                      std::to_string(fermions[static_cast<std::size_t>(n)])});
  report.tables.push_back(std::move(t));
  return report;
}

Report run_overlap(double sigma, const std::vector<double>& separations) {
  Report report;
  report.command = "overlap";
  const auto curve = fock::overlap_decay_curve(sigma, separations);
  bool decreasing = true;
  for (std::size_t i = 1; i < curve.size(); ++i)
    decreasing = decreasing && curve[i].second < curve[i - 1].second;

  report.findings.push_back({"sigma", format_double(sigma), true});
  report.findings.push_back({"points", std::to_string(curve.size()), true});
  report.findings.push_back({"strictly_decreasing", bool_str(decreasing), decreasing});
  if (!curve.empty())
    report.findings.push_back(
        {"fraction_at_max_separation", format_double(curve.back().second), true});

  TableData t{"overlap_decay", {"separation", "fraction"}, {}, true};
  for (const auto& [separation, fraction] : curve)
    t.rows.push_back({format_double(separation), format_double(fraction)});
  report.tables.push_back(std::move(t));
  return report;
}

hilbert::ProjectiveMeasurement load_measurement(Report& report,
                                                const std::vector<std::string>& paths) {
  std::vector<hilbert::Projector> projectors;
  projectors.reserve(paths.size());
  for (const std::string& arg : paths) {
    const std::string path = resolve_input(arg);
    add_input(report, path);
    projectors.emplace_back(hilbert::load_matrix(path));
  }
  return hilbert::ProjectiveMeasurement{std::move(projectors)};
}

Report run_nosignal(const std::string& state_arg, const std::vector<std::string>& meas_a,
                    const std::vector<std::string>& meas_b, const std::vector<std::string>& meas_b2,
                    double tol) {
  Report report;
  report.command = "nosignal";
  const std::string state_path = resolve_input(state_arg);
  add_input(report, state_path);
  const hilbert::DensityOperator rho{hilbert::load_matrix(state_path)};
  const hilbert::ProjectiveMeasurement a = load_measurement(report, meas_a);
  const hilbert::ProjectiveMeasurement b = load_measurement(report, meas_b);
  const hilbert::ProjectiveMeasurement b2 = load_measurement(report, meas_b2);

  const hilbert::NoSignalingResult result = hilbert::no_signaling_check(rho, a, b, b2, tol);
  report.findings.push_back({"tolerance", format_double(tol), true});
  report.findings.push_back(
      {"marginals_consistent", bool_str(result.consistent), result.consistent});
  report.findings.push_back(
      {"max_deviation", format_double(result.max_deviation), result.consistent});

  TableData t{"marginals", {"outcome", "p_under_B", "p_under_B2", "p_reduced"}, {}, false};
  for (std::size_t i = 0; i < result.marginal_b.size(); ++i)
    t.rows.push_back({std::to_string(i), format_double(result.marginal_b[i]),
                      format_double(result.marginal_b2[i]),
                      format_double(result.reduced_prediction[i])});
  report.tables.push_back(std::move(t));
  return report;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string data_dir() {
  if (const char* env = std::getenv("QONTEXT_DATA_DIR"); env != nullptr && *env != '\0')
    return env;
  return QONTEXT_BUNDLED_DATA_DIR;
}

std::string resolve_input(const std::string& path) {
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) return path;
  const std::filesystem::path fallback = std::filesystem::path(data_dir()) / path;
  if (std::filesystem::exists(fallback, ec)) return fallback.string();
  return path;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact-arithmetic workbench for contextuality scenarios, quasi-set valuations "
               "and Fock-space symmetrization"};
  app.require_subcommand(1);
  std::string json_path;
  bool timestamps = false;
  app.add_option("--json", json_path, "also write the report as JSON to this path");
  app.add_flag("--timestamps", timestamps, "include a timestamp in the report");

  CLI::App* ks = app.add_subcommand("ks-verify", "check non-colorability of a coloring scenario");
  std::string scenario_path;
  std::optional<std::string> vectors_path;
  double ks_tol = 1e-12;
  ks->add_option("scenario", scenario_path, "scenario file")->required();
  ks->add_option("--vectors", vectors_path, "vector realization file to validate");
  ks->add_option("--tol", ks_tol, "realization tolerance (default 1e-12)");

  CLI::App* ineq = app.add_subcommand("inequality", "valuation tables and pair-product bounds");
  std::string selection = "all";
  ineq->add_option("--table", selection, "all|classical|quasi|forbidden")
      ->check(CLI::IsMember({"all", "classical", "quasi", "forbidden"}));

  CLI::App* qfn = app.add_subcommand("qfunctions", "quasi-function collapse counts");
  std::uint64_t qcard = 0;
  int outcomes = 0;
  qfn->add_option("--qcard", qcard, "quasi-cardinal of the class")->required();
  qfn->add_option("--outcomes", outcomes, "outcome count d")->required()
      ->check(CLI::PositiveNumber);

  CLI::App* fk = app.add_subcommand("fock", "sector dimensions and projector checks");
  int dim = 0, particles = 0;
  fk->add_option("--dim", dim, "single-particle dimension")->required()
      ->check(CLI::PositiveNumber);
  fk->add_option("--particles", particles, "particle number")->required()
      ->check(CLI::NonNegativeNumber);

  CLI::App* ov = app.add_subcommand("overlap", "two-fermion interference decay curve");
  double sigma = 1.0;
  std::vector<double> separations;
  ov->add_option("--sigma", sigma, "Gaussian width (default 1)");
  ov->add_option("--separations", separations, "comma-separated separations, ascending")
      ->required()
      ->delimiter(',');

  CLI::App* ns = app.add_subcommand("nosignal", "A-marginal independence of the B context");
  std::string state_path;
  std::vector<std::string> meas_a, meas_b, meas_b2;
  double ns_tol = 1e-9;
  ns->add_option("--state", state_path, "density matrix file")->required();
  ns->add_option("--measA", meas_a, "projector matrix files for A")->required();
  ns->add_option("--measB", meas_b, "projector matrix files for B")->required();
  ns->add_option("--measB2", meas_b2, "projector matrix files for the alternative B context")
      ->required();
  ns->add_option("--tol", ns_tol, "agreement tolerance (default 1e-9)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    Report report;
    if (ks->parsed())
      report = run_ks_verify(scenario_path, vectors_path, ks_tol);
    else if (ineq->parsed())
      report = run_inequality(selection);
    else if (qfn->parsed())
      report = run_qfunctions(qcard, outcomes);
    else if (fk->parsed())
      report = run_fock(dim, particles);
    else if (ov->parsed())
      report = run_overlap(sigma, separations);
    else
      report = run_nosignal(state_path, meas_a, meas_b, meas_b2, ns_tol);

    if (timestamps) report.timestamp = utc_timestamp();
    render_text(report, out);
    if (!json_path.empty()) {
      std::ofstream jf(json_path, std::ios::binary);
      if (!jf) {
        err << "error: cannot write JSON report to '" << json_path << "'\n";
        return 2;
      }
      jf << to_json(report).dump(2) << '\n';
    }
    return report.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace qontext::cli
