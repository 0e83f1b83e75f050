// graphpos: entrywise positivity preservers on sparse patterns.
//
// Exit codes: 0 pass, 1 property fail (certificate emitted), 2 usage or
// domain error.

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphpos/graph.hpp"
#include "graphpos/power_sum.hpp"
#include "graphpos/reports.hpp"
#include "graphpos/sym_matrix.hpp"

namespace {

using graphpos::Report;
using graphpos::RunOptions;

constexpr int kExitUsage = 2;

// Accepts a decimal number or a fraction such as "1/64".
double parse_step(const std::string& text) {
  auto number = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw std::invalid_argument("--grid: cannot parse '" + text + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  const double step = slash == std::string::npos
                          ? number(text)
                          : number(std::string_view(text).substr(0, slash)) /
                                number(std::string_view(text).substr(slash + 1));
  if (!(step > 0.0)) throw std::invalid_argument("--grid: step must be > 0");
  return step;
}

graphpos::SymMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file " + path);
  return graphpos::read_matrix(in);
}

graphpos::Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file " + path);
  return graphpos::read_graph(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entrywise positivity preservers on trees and sparse patterns"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "graphpos 0.1.0");

  RunOptions opts;
  std::string grid_text = "1/64";
  std::string out_path;
  std::string format = "json";
  app.add_option("--seed", opts.seed, "Base seed; trial i uses seed + i")->capture_default_str();
  app.add_option("--tol", opts.tol, "PSD tolerance")->capture_default_str();
  app.add_option("--trials", opts.trials, "Randomized trials")->capture_default_str();
  app.add_option("--grid", grid_text, "Grid step, decimal or fraction")->capture_default_str();
  app.add_option("--jobs", opts.jobs, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--out", out_path, "Report file (default stdout)");
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  std::string literal;
  graphpos::TreeTrialParams tree_params;
  auto* preserver = app.add_subcommand("preserver-test", "Grid and random-tree preservation test");
  preserver->add_option("function", literal, "Function literal, e.g. \"1*x^1, 1*x^2\"")->required();
  preserver->add_option("--min-vertices", tree_params.min_vertices)->capture_default_str();
  preserver->add_option("--max-vertices", tree_params.max_vertices)->capture_default_str();
  preserver->add_option("--range", tree_params.range, "Entries lie in [0, R)")->capture_default_str();

  unsigned max_order = 8;
  double bound = 8.0;
  auto* absmon = app.add_subcommand("absmon-test", "Forward-difference absolute monotonicity test");
  absmon->add_option("function", literal, "Function literal")->required();
  absmon->add_option("--max-order", max_order)->capture_default_str();
  absmon->add_option("--bound", bound, "Grid covers [0, bound]")->capture_default_str();

  std::string graph_spec;
  std::string json_path;
  auto* witness = app.add_subcommand("witness", "Certified N_k witnesses and bounds on k_G");
  witness->add_option("graph", graph_spec, "Graph spec, e.g. \"star 6\"")->required();
  witness->add_option("--json", json_path, "Write witness sets to this file");

  std::vector<double> alphas;
  double range_max = 1.0;
  auto* critical = app.add_subcommand("critical-exponent", "Hadamard powers x^alpha on a tree");
  critical->add_option("tree", graph_spec, "Tree spec, e.g. \"path 5\"")->required();
  critical->add_option("--alphas", alphas, "Exponents")->required()->delimiter(',');
  critical->add_option("--range", range_max, "Entries lie in [0, R)")->capture_default_str();

  std::string kind;
  std::vector<double> params;
  auto* construct = app.add_subcommand("construct", "Tree preservers and coefficient thresholds");
  construct->add_option("kind", kind, "poly | entire | superadditive | mult-convex")
      ->required()
      ->check(CLI::IsMember({"poly", "entire", "superadditive", "mult-convex"}));
  construct->add_option("params", params,
                        "poly: n_neg; entire: N; superadditive: r s c_r c_s; "
                        "mult-convex: r' r s s' c_r' c_r c_s c_s'")
      ->required();

  app.add_subcommand("star-suite", "Star PSD oracle agreement and kernel stability");

  double a_value = 1.0;
  auto* thresholding = app.add_subcommand("thresholding", "Thresholding a * ones to a pattern");
  thresholding->add_option("graph", graph_spec, "Graph spec")->required();
  thresholding->add_option("--a", a_value)->capture_default_str();

  std::string matrix_path;
  std::string forest_path;
  auto* check = app.add_subcommand("check-matrix", "Re-validate a matrix certificate");
  check->add_option("matrix", matrix_path, "Matrix file")->required()->check(CLI::ExistingFile);
  check->add_option("--forest", forest_path, "Forest file for the elimination test")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    opts.grid_step = parse_step(grid_text);
    Report report;
    if (*preserver) {
      report = graphpos::cmd_preserver_test(graphpos::parse_function_literal(literal), tree_params, opts);
    } else if (*absmon) {
      report = graphpos::cmd_absmon_test(graphpos::parse_function_literal(literal), max_order, opts, bound);
    } else if (*witness) {
      report = graphpos::cmd_witness(graphpos::graph_from_spec(graph_spec),
                                     json_path.empty() ? std::nullopt : std::optional(json_path), opts);
    } else if (*critical) {
      report = graphpos::cmd_critical_exponent(graphpos::graph_from_spec(graph_spec), alphas, range_max, opts);
    } else if (*construct) {
      auto count = [&](std::size_t n) {
        if (params.size() != n) {
          throw std::invalid_argument("construct " + kind + ": expected " + std::to_string(n) +
                                      " parameters");
        }
      };
      auto whole = [&] {
        count(1);
        if (!(params[0] >= 1.0) || params[0] != static_cast<double>(static_cast<std::size_t>(params[0]))) {
          throw std::invalid_argument("construct " + kind + ": expected a positive integer");
        }
        return static_cast<std::size_t>(params[0]);
      };
      if (kind == "poly") {
        report = graphpos::cmd_construct_poly(whole(), opts);
      } else if (kind == "entire") {
        report = graphpos::cmd_construct_entire(whole(), opts);
      } else if (kind == "superadditive") {
        count(4);
        report = graphpos::cmd_construct_superadditive(params[0], params[1], params[2], params[3], opts);
      } else {
        count(8);
        report = graphpos::cmd_construct_mult_convex({params.begin(), params.begin() + 4},
                                                     {params.begin() + 4, params.end()}, opts);
      }
    } else if (app.got_subcommand("star-suite")) {
      report = graphpos::cmd_star_suite(opts);
    } else if (*thresholding) {
      report = graphpos::cmd_thresholding(graphpos::graph_from_spec(graph_spec), a_value, opts);
    } else {
      std::optional<graphpos::Graph> forest;
      if (!forest_path.empty()) forest = load_graph(forest_path);
      report = graphpos::cmd_check_matrix(load_matrix(matrix_path), forest, opts);
    }

    const std::string text =
        format == "json" ? graphpos::to_json(report).dump(2) + "\n" : graphpos::to_csv(report);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      if (!out) throw std::invalid_argument("cannot open output file " + out_path);
      out << text;
    }
    return report.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
