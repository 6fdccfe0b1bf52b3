// forestmetrics CLI: forest metrics of weighted multigraphs, an O(n^2)
// edge-perturbation predictor, a brute-force rooted-forest oracle with a
// Monte Carlo connection simulator, and resistance-distance/limit reports.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "forestmetrics/graph.hpp"
#include "forestmetrics/kernel.hpp"
#include "forestmetrics/metrics.hpp"
#include "forestmetrics/oracle.hpp"
#include "forestmetrics/perturbation.hpp"
#include "forestmetrics/resistance.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitPropertyViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Floats are printed with 12 significant digits everywhere.
std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ordered_json json_real(double v) { return ordered_json::parse(fmt12(v)); }

ordered_json matrix_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(json_real(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json graph_json(const forest::WeightedMultigraph& g) {
  ordered_json edges = ordered_json::array();
  for (const auto& e : g.edges())
    edges.push_back({e.u + 1, e.v + 1, json_real(e.weight)});
  return {{"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

forest::WeightedMultigraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  return forest::parse_edge_list(in);
}

void print_matrix(std::ostream& os, const std::string& name,
                  const Eigen::MatrixXd& m) {
  os << name << ":\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << fmt12(m(i, j));
    os << "\n";
  }
}

// One matrix per file; the header row carries the 1-based vertex labels.
void write_csv(const std::string& path, int n,
               const std::function<std::string(int, int)>& cell) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  for (int j = 0; j < n; ++j) out << (j ? "," : "") << (j + 1);
  out << "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out << (j ? "," : "") << cell(i, j);
    out << "\n";
  }
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  write_csv(path, static_cast<int>(m.rows()),
            [&](int i, int j) { return fmt12(m(i, j)); });
}

ordered_json check_json(const forest::CheckResult& check) {
  ordered_json j{{"passed", check.passed},
                 {"max_defect", json_real(check.max_defect)},
                 {"detail", check.detail}};
  if (check.skipped > 0) j["skipped"] = check.skipped;
  return j;
}

void print_check(std::ostream& os, const std::string& name,
                 const forest::CheckResult& check) {
  os << "check " << name << ": " << (check.passed ? "pass" : "FAIL")
     << " (max defect " << fmt12(check.max_defect) << "; " << check.detail
     << ")\n";
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      grid.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw forest::DomainError("invalid alpha grid entry '" + item + "'");
    }
  }
  if (grid.empty()) throw forest::DomainError("alpha grid must not be empty");
  return grid;
}

// ---------------------------------------------------------------------------

struct ComputeConfig {
  std::string input;
  double alpha = 1.0;
  double tol = 1e-9;
  std::string format = "text";
  std::string output;
};

int cmd_compute(const ComputeConfig& cfg) {
  const auto g = load_graph(cfg.input);
  const int n = g.vertex_count();
  const auto q = forest::accessibility_matrix(g, cfg.alpha);
  const auto report = forest::validate_doubly_stochastic(q, cfg.tol);
  const auto d = forest::forest_distance_matrix(q);
  const auto rho = forest::adjusted_forest_distance_matrix(q);
  const double diam = forest::diameter(d);
  auto theta = [&](int i, int j) {
    return forest::cumulative_weight(rho, i, j);
  };

  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = "compute";
    doc["alpha"] = json_real(cfg.alpha);
    doc["graph"] = graph_json(g);
    ordered_json validation{
        {"max_symmetry_defect", json_real(report.max_symmetry_defect)},
        {"min_entry", json_real(report.min_entry)},
        {"max_row_sum_defect", json_real(report.max_row_sum_defect)},
        {"passed", report.passed}};
    validation["warning"] =
        report.warning.empty() ? ordered_json() : ordered_json(report.warning);
    doc["validation"] = std::move(validation);
    doc["q"] = matrix_json(q.q);
    doc["d"] = matrix_json(d.d);
    doc["rho"] = matrix_json(rho.d);
    ordered_json theta_rows = ordered_json::array();
    for (int i = 0; i < n; ++i) {
      ordered_json row = ordered_json::array();
      for (int j = 0; j < n; ++j)
        row.push_back(i == j ? ordered_json() : json_real(theta(i, j)));
      theta_rows.push_back(std::move(row));
    }
    doc["theta"] = std::move(theta_rows);
    doc["diameter"] = json_real(diam);
    std::cout << doc.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    if (cfg.output.empty())
      throw forest::DomainError("--format csv requires --output <prefix>");
    write_matrix_csv(cfg.output + "_q.csv", q.q);
    write_matrix_csv(cfg.output + "_d.csv", d.d);
    write_matrix_csv(cfg.output + "_rho.csv", rho.d);
    write_csv(cfg.output + "_theta.csv", n, [&](int i, int j) {
      return i == j ? std::string() : fmt12(theta(i, j));
    });
    std::cout << "wrote " << cfg.output << "_{q,d,rho,theta}.csv\n"
              << "diameter: " << fmt12(diam) << "\n"
              << "validation: " << (report.passed ? "pass" : "FAIL")
              << " (max row-sum defect " << fmt12(report.max_row_sum_defect)
              << ")\n";
  } else {
    std::cout << "n = " << n << ", alpha = " << fmt12(cfg.alpha) << "\n";
    print_matrix(std::cout, "Q", q.q);
    print_matrix(std::cout, "d (forest distance)", d.d);
    print_matrix(std::cout, "rho (adjusted forest distance)", rho.d);
    std::cout << "theta (cumulative connection weight):\n";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        std::cout << (j ? " " : "") << (i == j ? "-" : fmt12(theta(i, j)));
      std::cout << "\n";
    }
    std::cout << "diameter: " << fmt12(diam) << "\n"
              << "validation: " << (report.passed ? "pass" : "FAIL")
              << " (symmetry " << fmt12(report.max_symmetry_defect)
              << ", min entry " << fmt12(report.min_entry) << ", row sum "
              << fmt12(report.max_row_sum_defect) << ")\n";
    if (!report.warning.empty())
      std::cout << "warning: " << report.warning << "\n";
  }
  if (!report.passed) {
    std::cerr << "doubly-stochastic validation failed: max row-sum defect "
              << fmt12(report.max_row_sum_defect) << " > tol "
              << fmt12(cfg.tol) << "\n";
    return kExitPropertyViolation;
  }
  return kExitOk;
}

struct PerturbConfig {
  std::string input;
  double alpha = 1.0;
  double tol = 1e-9;
  std::string format = "text";
  std::vector<int> edge;
  double eps = 0.0;
  bool round_trip = false;
};

int cmd_perturb(const PerturbConfig& cfg) {
  if (cfg.eps == 0.0) throw forest::DomainError("eps must be nonzero");
  const auto g = load_graph(cfg.input);
  const int n = g.vertex_count();
  const int k = cfg.edge.at(0) - 1;
  const int t = cfg.edge.at(1) - 1;
  if (k < 0 || k >= n || t < 0 || t >= n)
    throw forest::DomainError("edge endpoints out of range");
  const forest::EdgeDelta delta{k, t, cfg.eps};

  const auto before = forest::compute_metric_state(g, cfg.alpha);
  const auto predicted =
      forest::predict_perturbation(before.q, before.rho, delta);
  const auto modified = forest::apply_edge_delta(g, delta);
  const auto after = forest::compute_metric_state(modified, cfg.alpha);

  const double err_q =
      (before.q.q + predicted.delta_q - after.q.q).cwiseAbs().maxCoeff();
  const double err_rho =
      (before.rho.d + predicted.delta_rho - after.rho.d).cwiseAbs().maxCoeff();
  const double err_d =
      (before.d.d + predicted.delta_d - after.d.d).cwiseAbs().maxCoeff();

  const auto endpoint =
      forest::endpoint_reciprocal_identity(before.rho, after.rho, delta, cfg.tol);
  const auto proportionality =
      forest::proportionality_check(before, after, k, t, cfg.tol);
  const auto increments =
      forest::increment_formulas_check(before, after, delta, cfg.tol);
  forest::CheckResult ratio_check;
  double ratio = 0.0;
  bool ratio_ok = true;
  try {
    ratio = forest::profile_ratio(before, after, k, t, cfg.tol, &ratio_check);
  } catch (const forest::PropertyViolation&) {
    ratio_ok = false;
    ratio = after.d.d(k, t) / before.d.d(k, t);
  }
  std::optional<forest::CheckResult> round_trip;
  if (cfg.round_trip)
    round_trip = forest::reciprocity_metamorphic_check(g, cfg.alpha, delta, cfg.tol);

  const bool update_ok = err_q <= cfg.tol && err_rho <= cfg.tol && err_d <= cfg.tol;
  const bool ok = update_ok && endpoint.passed && proportionality.passed &&
                  increments.passed && ratio_ok &&
                  (!round_trip || round_trip->passed);

  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = "perturb";
    doc["alpha"] = json_real(cfg.alpha);
    doc["edge"] = {cfg.edge.at(0), cfg.edge.at(1)};
    doc["eps"] = json_real(cfg.eps);
    doc["predicted_delta_q"] = matrix_json(predicted.delta_q);
    doc["predicted_delta_d"] = matrix_json(predicted.delta_d);
    doc["predicted_delta_rho"] = matrix_json(predicted.delta_rho);
    doc["max_abs_error"] = {{"q", json_real(err_q)},
                            {"rho", json_real(err_rho)},
                            {"d", json_real(err_d)}};
    doc["ratio"] = json_real(ratio);
    doc["checks"] = {{"endpoint_identity", check_json(endpoint)},
                     {"proportionality", check_json(proportionality)},
                     {"increment_formulas", check_json(increments)},
                     {"profile_ratio", check_json(ratio_check)}};
    if (round_trip) doc["checks"]["reciprocity_round_trip"] = check_json(*round_trip);
    doc["passed"] = ok;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "edge (" << cfg.edge.at(0) << "," << cfg.edge.at(1)
              << ") eps " << fmt12(cfg.eps) << " at alpha "
              << fmt12(cfg.alpha) << "\n";
    print_matrix(std::cout, "predicted dQ", predicted.delta_q);
    print_matrix(std::cout, "predicted drho", predicted.delta_rho);
    std::cout << "predicted dq(" << cfg.edge.at(0) << "," << cfg.edge.at(1)
              << ") = " << fmt12(predicted.delta_q(k, t)) << "\n"
              << "max |predicted - recomputed|: q " << fmt12(err_q) << ", rho "
              << fmt12(err_rho) << ", d " << fmt12(err_d) << "\n"
              << "common ratio d'_kt/d_kt = " << fmt12(ratio) << "\n";
    print_check(std::cout, "endpoint_identity", endpoint);
    print_check(std::cout, "proportionality", proportionality);
    print_check(std::cout, "increment_formulas", increments);
    print_check(std::cout, "profile_ratio", ratio_check);
    if (round_trip) print_check(std::cout, "reciprocity_round_trip", *round_trip);
    std::cout << (ok ? "all checks passed" : "CHECKS FAILED") << "\n";
  }
  return ok ? kExitOk : kExitPropertyViolation;
}

struct OracleConfig {
  std::string input;
  double alpha = 1.0;
  std::string format = "text";
  std::vector<int> pair;
  long long samples = 0;
  std::uint64_t seed = 0;
  bool dump_forests = false;
};

int cmd_oracle(const OracleConfig& cfg) {
  const auto g = load_graph(cfg.input);
  const int n = g.vertex_count();
  const int i = cfg.pair.at(0) - 1;
  const int j = cfg.pair.at(1) - 1;
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw forest::DomainError("pair out of range");
  const forest::Rational alpha(cfg.alpha);
  if (!(cfg.alpha > 0)) throw forest::DomainError("alpha must be positive");

  const auto exact = forest::forest_accessibility_exact_all(g, alpha);
  const forest::Rational q_exact = exact.value(i, j);
  const forest::Rational d_exact =
      (exact.value(i, i) + exact.value(j, j) - exact.value(i, j) -
       exact.value(j, i)) /
      2;
  const auto q = forest::accessibility_matrix(g, cfg.alpha);
  const double defect =
      std::abs(q_exact.convert_to<double>() - q.q(i, j));

  std::optional<forest::SimulationResult> sim;
  if (cfg.samples != 0)
    sim = forest::simulate_connection_model(g, cfg.alpha, i, j, cfg.samples,
                                            cfg.seed);

  std::ostringstream qs, ds;
  qs << q_exact;
  ds << d_exact;
  char defect_buf[32];
  std::snprintf(defect_buf, sizeof defect_buf, "%.1e", defect);

  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = "oracle";
    doc["alpha"] = json_real(cfg.alpha);
    doc["pair"] = {cfg.pair.at(0), cfg.pair.at(1)};
    doc["q_exact"] = qs.str();
    doc["d_exact"] = ds.str();
    doc["kernel_defect"] = json_real(defect);
    if (sim) {
      doc["simulation"] = {{"samples", sim->samples},
                           {"seed", cfg.seed},
                           {"estimate", json_real(sim->estimate)},
                           {"std_error", json_real(sim->std_error)}};
    }
    if (cfg.dump_forests) {
      if (n > 6)
        throw forest::DomainError("--dump-forests is limited to n <= 6");
      ordered_json forests = ordered_json::array();
      const auto edges = forest::oracle_edge_list(g);
      for (const auto& f : forest::enumerate_rooted_forests(g)) {
        ordered_json fe = ordered_json::array();
        for (int id : f.edge_ids)
          fe.push_back({edges[id].first.u + 1, edges[id].first.v + 1});
        ordered_json roots = ordered_json::array();
        for (int r : f.roots) roots.push_back(r + 1);
        std::ostringstream w;
        w << f.weight;
        forests.push_back({{"edges", std::move(fe)},
                           {"roots", std::move(roots)},
                           {"weight", w.str()}});
      }
      doc["forests"] = std::move(forests);
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "q" << cfg.pair.at(0) << cfg.pair.at(1) << " = " << qs.str()
              << ", d" << cfg.pair.at(0) << cfg.pair.at(1) << " = " << ds.str()
              << ", kernel defect " << defect_buf << "\n";
    if (sim) {
      const double d_float = d_exact.convert_to<double>();
      std::cout << "simulation: estimate " << fmt12(sim->estimate)
                << ", std error " << fmt12(sim->std_error) << ", samples "
                << sim->samples << ", seed " << cfg.seed << "\n"
                << "|estimate - exact| = "
                << fmt12(std::abs(sim->estimate - d_float)) << "\n";
    }
    if (cfg.dump_forests) {
      if (n > 6)
        throw forest::DomainError("--dump-forests is limited to n <= 6");
      const auto edges = forest::oracle_edge_list(g);
      for (const auto& f : forest::enumerate_rooted_forests(g)) {
        std::cout << "forest edges [";
        for (std::size_t e = 0; e < f.edge_ids.size(); ++e) {
          const auto& edge = edges[f.edge_ids[e]].first;
          std::cout << (e ? " " : "") << "(" << edge.u + 1 << "," << edge.v + 1
                    << ")";
        }
        std::cout << "] roots [";
        for (std::size_t r = 0; r < f.roots.size(); ++r)
          std::cout << (r ? " " : "") << f.roots[r] + 1;
        std::cout << "] weight " << f.weight << "\n";
      }
    }
  }
  return kExitOk;
}

struct LimitsConfig {
  std::string input;
  double alpha = 1.0;
  double tol = 1e-8;
  std::string format = "text";
  std::string grid_text;
  bool check_extension = false;
};

ordered_json row_json(const forest::ConvergenceRow& row) {
  ordered_json j;
  j["alpha"] = json_real(row.alpha);
  if (row.max_defect_d) j["max_defect_d"] = json_real(*row.max_defect_d);
  if (row.max_defect_rho) j["max_defect_rho"] = json_real(*row.max_defect_rho);
  if (row.theta_cross_max)
    j["theta_cross_max"] = json_real(*row.theta_cross_max);
  return j;
}

void print_rows(std::ostream& os, const forest::ConvergenceReport& report) {
  for (const auto& row : report.rows) {
    os << "  alpha " << fmt12(row.alpha);
    if (row.max_defect_d) os << "  max_defect_d " << fmt12(*row.max_defect_d);
    if (row.max_defect_rho)
      os << "  max_defect_rho " << fmt12(*row.max_defect_rho);
    if (row.theta_cross_max)
      os << "  theta_cross_max " << fmt12(*row.theta_cross_max);
    os << "\n";
  }
}

int cmd_limits(const LimitsConfig& cfg) {
  const auto g = load_graph(cfg.input);
  std::vector<double> grid;
  if (cfg.grid_text.empty())
    grid = {1e-6, 1e-4, 1e-2, 1.0, 1e2, 1e4, 1e6};
  else
    grid = parse_grid(cfg.grid_text);
  const auto small = forest::limit_small_alpha(g, grid);
  const auto large = forest::limit_large_alpha(g, grid);
  std::optional<forest::CheckResult> extension;
  if (cfg.check_extension)
    extension = forest::alpha_extension_identity_check(g, cfg.alpha, cfg.tol);

  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = "limits";
    ordered_json small_rows = ordered_json::array();
    for (const auto& row : small.rows) small_rows.push_back(row_json(row));
    ordered_json large_rows = ordered_json::array();
    for (const auto& row : large.rows) large_rows.push_back(row_json(row));
    doc["small_alpha"] = std::move(small_rows);
    doc["large_alpha"] = std::move(large_rows);
    doc["extension_check"] =
        extension ? check_json(*extension) : ordered_json();
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "small-alpha convergence to the discrete metric:\n";
    print_rows(std::cout, small);
    std::cout << "large-alpha convergence to the resistance metric:\n";
    print_rows(std::cout, large);
    if (extension) {
      std::cout << "alpha-extension identity at alpha " << fmt12(cfg.alpha)
                << ": "
                << (extension->passed ? "identity holds" : "IDENTITY FAILS")
                << ", max defect " << fmt12(extension->max_defect) << "\n";
    }
  }
  return (!extension || extension->passed) ? kExitOk : kExitPropertyViolation;
}

struct ResistanceConfig {
  std::string input;
  std::string format = "text";
  std::string output;
};

int cmd_resistance(const ResistanceConfig& cfg) {
  const auto g = load_graph(cfg.input);
  const int n = g.vertex_count();
  const auto r = forest::resistance_distance_matrix(g);
  auto cell = [&](int i, int j) {
    return r(i, j).infinite() ? std::string("inf") : fmt12(r(i, j).value());
  };
  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = "resistance";
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < n; ++i) {
      ordered_json row = ordered_json::array();
      for (int j = 0; j < n; ++j) {
        if (r(i, j).infinite())
          row.push_back("inf");
        else
          row.push_back(json_real(r(i, j).value()));
      }
      rows.push_back(std::move(row));
    }
    doc["resistance"] = std::move(rows);
    std::cout << doc.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    if (cfg.output.empty())
      throw forest::DomainError("--format csv requires --output <prefix>");
    write_csv(cfg.output + "_resistance.csv", n, cell);
    std::cout << "wrote " << cfg.output << "_resistance.csv\n";
  } else {
    std::cout << "resistance distance:\n";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) std::cout << (j ? " " : "") << cell(i, j);
      std::cout << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forest metrics of weighted multigraphs"};
  app.require_subcommand(1);

  ComputeConfig compute_cfg;
  auto* compute = app.add_subcommand(
      "compute", "Q, forest distances, adjusted distances, theta, diameter");
  compute->add_option("input", compute_cfg.input, "edge-list file")->required();
  compute->add_option("--alpha", compute_cfg.alpha, "kernel parameter");
  compute->add_option("--tol", compute_cfg.tol, "validation tolerance");
  compute->add_option("--format", compute_cfg.format)
      ->check(CLI::IsMember({"text", "json", "csv"}));
  compute->add_option("--output", compute_cfg.output, "csv file prefix");

  PerturbConfig perturb_cfg;
  auto* perturb = app.add_subcommand(
      "perturb", "predicted vs recomputed increments for one edge delta");
  perturb->add_option("input", perturb_cfg.input, "edge-list file")->required();
  perturb->add_option("--alpha", perturb_cfg.alpha, "kernel parameter");
  perturb->add_option("--tol", perturb_cfg.tol, "check tolerance");
  perturb->add_option("--format", perturb_cfg.format)
      ->check(CLI::IsMember({"text", "json"}));
  perturb->add_option("--edge", perturb_cfg.edge, "endpoints k t (1-based)")
      ->expected(2)
      ->required();
  perturb->add_option("--eps", perturb_cfg.eps, "weight increment")->required();
  perturb->add_flag("--round-trip", perturb_cfg.round_trip,
                    "also verify the reciprocity round trip");

  OracleConfig oracle_cfg;
  auto* oracle = app.add_subcommand(
      "oracle", "exact rooted-forest accessibilities and the connection model");
  oracle->add_option("input", oracle_cfg.input, "edge-list file")->required();
  oracle->add_option("--alpha", oracle_cfg.alpha, "kernel parameter");
  oracle->add_option("--format", oracle_cfg.format)
      ->check(CLI::IsMember({"text", "json"}));
  oracle->add_option("--pair", oracle_cfg.pair, "vertices i j (1-based)")
      ->expected(2)
      ->required();
  auto* samples_opt = oracle->add_option("--samples", oracle_cfg.samples,
                                         "Monte Carlo sample count");
  auto* seed_opt =
      oracle->add_option("--seed", oracle_cfg.seed, "Monte Carlo seed");
  samples_opt->needs(seed_opt);
  oracle->add_flag("--dump-forests", oracle_cfg.dump_forests,
                   "list every rooted forest (n <= 6)");

  LimitsConfig limits_cfg;
  auto* limits = app.add_subcommand(
      "limits", "alpha -> 0 and alpha -> infinity convergence reports");
  limits->add_option("input", limits_cfg.input, "edge-list file")->required();
  limits->add_option("--alpha", limits_cfg.alpha,
                     "alpha for the extension identity check");
  limits->add_option("--tol", limits_cfg.tol, "identity tolerance");
  limits->add_option("--alpha-grid", limits_cfg.grid_text,
                     "comma-separated alpha grid");
  limits->add_option("--format", limits_cfg.format)
      ->check(CLI::IsMember({"text", "json"}));
  limits->add_flag("--check-extension", limits_cfg.check_extension,
                   "verify resistance(extension) = 2*d");

  ResistanceConfig resistance_cfg;
  auto* resistance =
      app.add_subcommand("resistance", "resistance distance matrix");
  resistance->add_option("input", resistance_cfg.input, "edge-list file")
      ->required();
  resistance->add_option("--format", resistance_cfg.format)
      ->check(CLI::IsMember({"text", "json", "csv"}));
  resistance->add_option("--output", resistance_cfg.output, "csv file prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (compute->parsed()) return cmd_compute(compute_cfg);
    if (perturb->parsed()) return cmd_perturb(perturb_cfg);
    if (oracle->parsed()) return cmd_oracle(oracle_cfg);
    if (limits->parsed()) return cmd_limits(limits_cfg);
    if (resistance->parsed()) return cmd_resistance(resistance_cfg);
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const forest::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const forest::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const forest::PropertyViolation& e) {
    std::cerr << "property violation: " << e.what() << "\n";
    return kExitPropertyViolation;
  } catch (const forest::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitPropertyViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPropertyViolation;
  }
}
