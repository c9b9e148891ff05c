// pathint: command-line front door for the formal path-integral engine.
//
// Subcommands:
//   expand           diagram series + prefactor for an action
//   diagrams         enumerate diagram isomorphism classes
//   check-invariance compare the series before/after a coordinate change
//   first-variation  infinitesimal change vs. the trace-term formula
//   oracle           adaptive quadrature vs. the truncated series
//   homotopy         deform a volume-preserving map to the identity
//
// Exit codes: 0 success, 1 unexpected failure, 2 parse/usage error,
// 3 degenerate Hessian, 4 truncation exceeded, 5 theorem violated
// (reserved for genuine mathematical findings), 6 quadrature precision
// failure. All output is byte-stable for identical inputs.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pathint/diagrams.hpp"
#include "pathint/feynman.hpp"
#include "pathint/invariance.hpp"
#include "pathint/oracles.hpp"
#include "pathint/problem.hpp"

namespace {

using nlohmann::ordered_json;
using pathint::ActionJet;
using pathint::DiagramClass;
using pathint::FormalSeries;
using pathint::GaussianRational;
using pathint::MapJet;
using pathint::Prefactor;
using pathint::Problem;
using pathint::Rational;
using pathint::Regime;

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", x);
  return buf;
}

std::string fmt_compact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

double rational_to_double(const Rational& r) { return r.to_double(); }

// In the oscillatory regime the coupling is kappa = i*hbar, so the series
// coefficient at order k picks up a factor i^k and the variable is hbar.
const char* series_variable(Regime regime) {
  return regime == Regime::kLaplace ? "kappa" : "hbar";
}

std::string coefficient_string(const Rational& c, int k, Regime regime) {
  if (regime == Regime::kLaplace) return c.str();
  return (GaussianRational(c, Rational(0)) * GaussianRational::i_power(k))
      .str();
}

void series_text(std::ostream& out, const std::string& label,
                 const FormalSeries<Rational>& s, Regime regime) {
  out << label << ":\n";
  for (int k = 0; k <= s.truncation_order(); ++k)
    out << "  " << series_variable(regime) << "^" << k << ": "
        << coefficient_string(s.coefficient(k), k, regime) << "\n";
}

ordered_json series_json(const FormalSeries<Rational>& s, Regime regime) {
  ordered_json rows = ordered_json::array();
  for (int k = 0; k <= s.truncation_order(); ++k)
    rows.push_back(coefficient_string(s.coefficient(k), k, regime));
  return rows;
}

struct CommonOptions {
  std::string problem_path;
  std::string format = "text";
  int order = -1;  // -1: use the problem file's task.max_order
  std::string regime_flag;
  bool connected = false;
};

int resolved_order(const CommonOptions& opts, const Problem& problem) {
  return opts.order >= 0 ? opts.order : problem.task.max_order;
}

Regime resolved_regime(const CommonOptions& opts, const Problem& problem) {
  if (opts.regime_flag.empty()) return problem.task.regime;
  return opts.regime_flag == "laplace" ? Regime::kLaplace
                                       : Regime::kOscillatory;
}

// ---------------------------------------------------------------- expand --

int cmd_expand(const CommonOptions& opts) {
  const Problem problem = pathint::load_problem(opts.problem_path);
  const int order = resolved_order(opts, problem);
  const Regime regime = resolved_regime(opts, problem);
  const Prefactor pre = pathint::prefactor(problem.action);
  const FormalSeries<Rational> series =
      pathint::diagram_sum(problem.action, order, opts.connected);

  if (opts.format == "json") {
    ordered_json j;
    j["command"] = "expand";
    j["regime"] = pathint::regime_name(regime);
    j["max_order"] = order;
    j["connected_only"] = opts.connected;
    j["prefactor"] = {{"half_dim_power", pre.half_dim_power.str()},
                      {"phase_eighths", pre.phase_eighths},
                      {"classical_value", pre.classical_value.str()},
                      {"abs_det", pre.abs_det.str()},
                      {"det_exponent", Prefactor::kDetExponent}};
    j["series"] = series_json(series, regime);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "command: expand\n"
            << "regime: " << pathint::regime_name(regime) << "\n"
            << "max_order: " << order << "\n"
            << "connected_only: " << (opts.connected ? "true" : "false")
            << "\n"
            << "prefactor:\n"
            << "  half_dim_power: " << pre.half_dim_power.str() << "\n"
            << "  phase_eighths: " << pre.phase_eighths << "\n"
            << "  classical_value: " << pre.classical_value.str() << "\n"
            << "  abs_det: " << pre.abs_det.str() << "\n"
            << "  det_exponent: " << Prefactor::kDetExponent << "\n";
  series_text(std::cout, "series", series, regime);
  return 0;
}

// -------------------------------------------------------------- diagrams --

int cmd_diagrams(int order, int min_valence, bool connected,
                 const std::string& format) {
  const std::vector<DiagramClass> classes =
      pathint::enumerate_diagrams(order, min_valence, connected);
  if (format == "json") {
    ordered_json j;
    j["command"] = "diagrams";
    j["max_order"] = order;
    j["min_valence"] = min_valence;
    j["connected_only"] = connected;
    ordered_json rows = ordered_json::array();
    for (const DiagramClass& cls : classes)
      rows.push_back({{"encoding", pathint::encode_diagram(cls.canonical)},
                      {"order", cls.order},
                      {"euler", cls.euler},
                      {"aut", cls.aut_count}});
    j["classes"] = rows;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "command: diagrams\n"
            << "max_order: " << order << "\n"
            << "min_valence: " << min_valence << "\n"
            << "connected_only: " << (connected ? "true" : "false") << "\n"
            << "classes: " << classes.size() << "\n";
  for (const DiagramClass& cls : classes)
    std::cout << pathint::encode_diagram(cls.canonical)
              << "  order=" << cls.order << "  chi=" << cls.euler
              << "  aut=" << cls.aut_count << "\n";
  return 0;
}

// ------------------------------------------------------ check-invariance --

int cmd_check_invariance(const CommonOptions& opts) {
  const Problem problem = pathint::load_problem(opts.problem_path);
  if (!problem.map)
    throw pathint::ParseError("check-invariance needs a \"map\" entry in " +
                              opts.problem_path);
  const int order = resolved_order(opts, problem);
  const pathint::InvarianceReport<Rational> report =
      pathint::check_invariance(problem.action, *problem.map, order);

  const std::string verdict =
      report.equal ? "equal"
                   : "unequal at order " +
                         std::to_string(report.first_differing_order);
  const std::string theorem =
      report.volume_preserving
          ? (report.equal ? "holds" : "VIOLATED")
          : "no prediction (map is not volume-preserving)";
  const int exit_code = report.theorem_holds() ? 0 : 5;

  if (opts.format == "json") {
    ordered_json j;
    j["command"] = "check-invariance";
    j["max_order"] = report.max_order;
    j["volume_preserving"] = report.volume_preserving;
    j["base"] = series_json(report.base, Regime::kLaplace);
    j["pushed"] = series_json(report.pushed, Regime::kLaplace);
    j["verdict"] = verdict;
    j["first_differing_order"] = report.first_differing_order;
    j["delta"] = report.delta.str();
    j["theorem"] = theorem;
    std::cout << j.dump(2) << "\n";
    return exit_code;
  }
  std::cout << "command: check-invariance\n"
            << "max_order: " << report.max_order << "\n"
            << "volume_preserving: "
            << (report.volume_preserving ? "true" : "false") << "\n";
  series_text(std::cout, "base", report.base, Regime::kLaplace);
  series_text(std::cout, "pushed", report.pushed, Regime::kLaplace);
  std::cout << "verdict: " << verdict << "\n";
  if (!report.equal) std::cout << "delta: " << report.delta.str() << "\n";
  std::cout << "theorem: " << theorem << "\n";
  return exit_code;
}

// ------------------------------------------------------- first-variation --

int cmd_first_variation(const CommonOptions& opts) {
  const Problem problem = pathint::load_problem(opts.problem_path);
  if (!problem.vector_field)
    throw pathint::ParseError(
        "first-variation needs a \"vector_field\" entry in " +
        opts.problem_path);
  const int order = resolved_order(opts, problem);
  const MapJet<Rational>& field = *problem.vector_field;
  const bool divergence_free = pathint::divergence_jet(field).empty();
  const FormalSeries<Rational> variation =
      pathint::first_variation(problem.action, field, order);
  const FormalSeries<Rational> traces =
      pathint::trace_terms(problem.action, field, order);
  const int differs_at = first_difference(variation, traces);

  const std::string verdict =
      differs_at < 0 ? "equal" : "unequal at order " + std::to_string(differs_at);
  const std::string theorem = differs_at < 0 ? "holds" : "VIOLATED";
  const int exit_code = differs_at < 0 ? 0 : 5;

  if (opts.format == "json") {
    ordered_json j;
    j["command"] = "first-variation";
    j["max_order"] = order;
    j["divergence_free"] = divergence_free;
    j["first_variation"] = series_json(variation, Regime::kLaplace);
    j["trace_terms"] = series_json(traces, Regime::kLaplace);
    j["verdict"] = verdict;
    j["theorem"] = theorem;
    std::cout << j.dump(2) << "\n";
    return exit_code;
  }
  std::cout << "command: first-variation\n"
            << "max_order: " << order << "\n"
            << "divergence_free: " << (divergence_free ? "true" : "false")
            << "\n";
  series_text(std::cout, "first_variation", variation, Regime::kLaplace);
  series_text(std::cout, "trace_terms", traces, Regime::kLaplace);
  std::cout << "verdict: " << verdict << "\n"
            << "theorem: " << theorem << "\n";
  return exit_code;
}

// ---------------------------------------------------------------- oracle --

int cmd_oracle(const CommonOptions& opts,
               const std::vector<std::string>& kappa_flags) {
  const Problem problem = pathint::load_problem(opts.problem_path);
  const int order = resolved_order(opts, problem);
  if (resolved_regime(opts, problem) == Regime::kOscillatory)
    throw pathint::ParseError(
        "oracle runs in the laplace regime only (oscillatory coefficients "
        "are identical up to powers of i)");
  std::vector<Rational> kappas;
  for (const std::string& text : kappa_flags)
    kappas.push_back(pathint::parse_rational_string(text));
  if (kappas.empty()) kappas = problem.task.kappa;
  if (kappas.empty())
    throw pathint::ParseError(
        "oracle needs at least one kappa sample (task.kappa or --kappa)");

  const FormalSeries<Rational> series =
      pathint::diagram_sum(problem.action, order);
  pathint::QuadratureOptions quad_options;
  quad_options.halfwidth_sigmas = problem.task.halfwidth_sigmas;
  quad_options.rel_tol = problem.task.rel_tol;
  quad_options.max_evaluations = problem.task.max_evaluations;

  struct Row {
    std::string kappa, quadrature, series, residual, normalized;
  };
  std::vector<Row> rows;
  for (const Rational& kappa : kappas) {
    const double k = kappa.to_double();
    const pathint::QuadratureResult result =
        pathint::laplace_quadrature(problem.action, k, quad_options);
    const double series_value =
        series.evaluate_double(k, &rational_to_double);
    const double residual = result.value - series_value;
    const double normalized = residual / std::pow(k, order + 1);
    rows.push_back({kappa.str(), fmt_double(result.value),
                    fmt_double(series_value), fmt_double(residual),
                    fmt_double(normalized)});
  }

  if (opts.format == "json") {
    ordered_json j;
    j["command"] = "oracle";
    j["regime"] = "laplace";
    j["max_order"] = order;
    j["halfwidth_sigmas"] = quad_options.halfwidth_sigmas;
    ordered_json samples = ordered_json::array();
    for (const Row& row : rows)
      samples.push_back({{"kappa", row.kappa},
                         {"quadrature", row.quadrature},
                         {"series", row.series},
                         {"residual", row.residual},
                         {"normalized", row.normalized}});
    j["samples"] = samples;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "command: oracle\n"
            << "regime: laplace\n"
            << "max_order: " << order << "\n"
            << "halfwidth_sigmas: " << fmt_compact(quad_options.halfwidth_sigmas)
            << "\n"
            << "samples: " << rows.size() << "\n";
  for (const Row& row : rows)
    std::cout << "kappa=" << row.kappa << " quadrature=" << row.quadrature
              << " series=" << row.series << " residual=" << row.residual
              << " normalized=" << row.normalized << "\n";
  return 0;
}

// -------------------------------------------------------------- homotopy --

int cmd_homotopy(const CommonOptions& opts) {
  const Problem problem = pathint::load_problem(opts.problem_path);
  if (!problem.map)
    throw pathint::ParseError("homotopy needs a \"map\" entry in " +
                              opts.problem_path);
  const MapJet<Rational>& map = *problem.map;
  const MapJet<Rational> id =
      MapJet<Rational>::identity(map.dim(), map.order());

  struct Row {
    std::string s;
    bool det_unit;
    std::optional<bool> endpoint;  // identity at s=0, the map at s=1
  };
  const Rational grid[] = {Rational(0), Rational(1, 4), Rational(1, 2),
                           Rational(3, 4), Rational(1)};
  std::vector<Row> rows;
  bool all_ok = true;
  for (const Rational& s : grid) {
    const MapJet<Rational> slice = pathint::moser_homotopy(map, s);
    Row row{s.str(), pathint::is_volume_preserving(slice), std::nullopt};
    if (s.is_zero()) row.endpoint = (slice == id);
    if (s == Rational(1)) row.endpoint = (slice == map);
    all_ok = all_ok && row.det_unit && row.endpoint.value_or(true);
    rows.push_back(row);
  }
  const int exit_code = all_ok ? 0 : 5;

  if (opts.format == "json") {
    ordered_json j;
    j["command"] = "homotopy";
    j["map_truncation"] = map.order();
    ordered_json slices = ordered_json::array();
    for (const Row& row : rows) {
      ordered_json entry = {{"s", row.s}, {"det_jet_unit", row.det_unit}};
      if (row.endpoint) entry["endpoint_matches"] = *row.endpoint;
      slices.push_back(entry);
    }
    j["slices"] = slices;
    j["verdict"] = all_ok ? "ok" : "FAILED";
    std::cout << j.dump(2) << "\n";
    return exit_code;
  }
  std::cout << "command: homotopy\n"
            << "map_truncation: " << map.order() << "\n";
  for (const Row& row : rows) {
    std::cout << "s=" << row.s << " det_jet_unit="
              << (row.det_unit ? "true" : "false");
    if (row.endpoint)
      std::cout << " endpoint_matches=" << (*row.endpoint ? "true" : "false");
    std::cout << "\n";
  }
  std::cout << "verdict: " << (all_ok ? "ok" : "FAILED") << "\n";
  return exit_code;
}

int run_mapped(const std::function<int()>& body) {
  try {
    return body();
  } catch (const pathint::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pathint::NotInvertible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pathint::DegenerateCriticalPoint& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const pathint::TruncationExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const pathint::QuadraturePrecisionFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 6;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Formal path-integral engine: exact stationary-phase series, "
      "coordinate-change invariance, and numerical oracles."};
  app.require_subcommand(1);

  CommonOptions expand_opts;
  CLI::App* expand = app.add_subcommand(
      "expand", "Diagram series and prefactor for an action");
  expand->add_option("problem", expand_opts.problem_path, "problem JSON file")
      ->required();
  expand->add_option("--order", expand_opts.order, "series order (overrides task)");
  expand->add_option("--regime", expand_opts.regime_flag, "laplace|oscillatory")
      ->check(CLI::IsMember({"laplace", "oscillatory"}));
  expand->add_flag("--connected", expand_opts.connected,
                   "sum connected diagrams only");
  expand->add_option("--format", expand_opts.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  int diagrams_order = 2;
  int diagrams_min_valence = 3;
  bool diagrams_connected = false;
  std::string diagrams_format = "text";
  CLI::App* diagrams = app.add_subcommand(
      "diagrams", "Enumerate diagram isomorphism classes");
  diagrams->add_option("--order", diagrams_order, "maximum |E|-|V|")
      ->check(CLI::NonNegativeNumber);
  diagrams->add_option("--min-valence", diagrams_min_valence,
                       "minimum vertex valence (>= 3)");
  diagrams->add_flag("--connected", diagrams_connected,
                     "connected classes only");
  diagrams->add_option("--format", diagrams_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  CommonOptions invariance_opts;
  CLI::App* invariance = app.add_subcommand(
      "check-invariance", "Series before/after a coordinate change");
  invariance
      ->add_option("problem", invariance_opts.problem_path, "problem JSON file")
      ->required();
  invariance->add_option("--order", invariance_opts.order,
                         "series order (overrides task)");
  invariance->add_option("--format", invariance_opts.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  CommonOptions variation_opts;
  CLI::App* variation = app.add_subcommand(
      "first-variation", "Infinitesimal change vs. trace-term formula");
  variation
      ->add_option("problem", variation_opts.problem_path, "problem JSON file")
      ->required();
  variation->add_option("--order", variation_opts.order,
                        "series order (overrides task)");
  variation->add_option("--format", variation_opts.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  CommonOptions oracle_opts;
  std::vector<std::string> oracle_kappas;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Adaptive quadrature vs. the truncated series");
  oracle->add_option("problem", oracle_opts.problem_path, "problem JSON file")
      ->required();
  oracle->add_option("--order", oracle_opts.order,
                     "series order (overrides task)");
  oracle->add_option("--regime", oracle_opts.regime_flag, "laplace|oscillatory")
      ->check(CLI::IsMember({"laplace", "oscillatory"}));
  oracle->add_option("--kappa", oracle_kappas,
                     "coupling sample, e.g. 1/10 (repeatable; overrides task)");
  oracle->add_option("--format", oracle_opts.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  CommonOptions homotopy_opts;
  CLI::App* homotopy = app.add_subcommand(
      "homotopy", "Volume-preserving deformation of a map to the identity");
  homotopy
      ->add_option("problem", homotopy_opts.problem_path, "problem JSON file")
      ->required();
  homotopy->add_option("--format", homotopy_opts.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand(expand))
    return run_mapped([&] { return cmd_expand(expand_opts); });
  if (app.got_subcommand(diagrams))
    return run_mapped([&] {
      return cmd_diagrams(diagrams_order, diagrams_min_valence,
                          diagrams_connected, diagrams_format);
    });
  if (app.got_subcommand(invariance))
    return run_mapped([&] { return cmd_check_invariance(invariance_opts); });
  if (app.got_subcommand(variation))
    return run_mapped([&] { return cmd_first_variation(variation_opts); });
  if (app.got_subcommand(oracle))
    return run_mapped([&] { return cmd_oracle(oracle_opts, oracle_kappas); });
  if (app.got_subcommand(homotopy))
    return run_mapped([&] { return cmd_homotopy(homotopy_opts); });
  return 2;
}
