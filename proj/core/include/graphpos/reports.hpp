#pragma once

// Randomized test orchestration and machine-readable reports behind the
// graphpos command-line tool. Each command returns a Report; a failing
// verdict always carries a certificate that re-checks through the library.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphpos/constructors.hpp"
#include "graphpos/graph.hpp"
#include "graphpos/power_sum.hpp"
#include "graphpos/rng.hpp"
#include "graphpos/star_tree.hpp"
#include "graphpos/sym_matrix.hpp"

namespace graphpos {

struct RunOptions {
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::size_t trials = 1000;
  double grid_step = 1.0 / 64.0;
  /// Worker threads for randomized trials; 0 picks hardware concurrency.
  /// Results do not depend on this value.
  std::size_t jobs = 1;
};

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::size_t trials = 0;
  bool pass = true;
  std::optional<nlohmann::ordered_json> certificate;
  double elapsed_ms = 0.0;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  /// Tabular commands fill these; to_csv emits them with a header row.
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
};

/// Stable key order: command, seed, tolerance, trials, verdict, certificate,
/// elapsed_ms, details.
nlohmann::ordered_json to_json(const Report& r);

/// Table rows when present, otherwise "field,value" lines for the scalar
/// report fields and details.
std::string to_csv(const Report& r);

struct TreeTrialParams {
  std::size_t min_vertices = 3;
  std::size_t max_vertices = 12;
  /// Matrices are sampled in P_T([0, R)).
  double range = 8.0;
};

/// Grid route (f >= 0, superadditivity, multiplicative midpoint convexity on
/// [0, R]) and random-tree route (sample T and A in P_T([0, R)), check
/// f_T[A]). A grid failure is turned into a concrete matrix certificate:
/// B(x + y, x, y) on path(3) or a rank-one 2x2 block on an edge.
Report cmd_preserver_test(const EntrywiseFunction& f, const TreeTrialParams& params,
                          const RunOptions& options);

/// Wraps check_abs_monotonic on [0, bound]; the certificate is
/// (n, x, h, difference).
Report cmd_absmon_test(const EntrywiseFunction& f, unsigned max_order, const RunOptions& options,
                       double bound = 8.0);

/// k_lower_bound witnesses (plus Vandermonde witnesses for complete graphs).
/// Verdict pass iff every witness certifies. When json_path is set the
/// witness sets are also written there.
Report cmd_witness(const Graph& g, const std::optional<std::string>& json_path,
                   const RunOptions& options);

/// For each alpha: random tree trials with x^alpha and, for alpha < 1, the
/// constructed counterexample. Verdict pass iff "preserved" matches alpha >= 1
/// on every row.
Report cmd_critical_exponent(const Graph& tree, const std::vector<double>& alphas,
                             double range_max, const RunOptions& options);

Report cmd_construct_poly(std::size_t n_neg, const RunOptions& options);
Report cmd_construct_entire(std::size_t n_blocks, const RunOptions& options);
Report cmd_construct_superadditive(double r, double s, double c_r, double c_s,
                                   const RunOptions& options);
Report cmd_construct_mult_convex(const std::vector<double>& exponents,
                                 const std::vector<double>& coefficients,
                                 const RunOptions& options);

/// Oracle agreement of star_psd_check with the spectral test on random stars
/// (d <= 10, entries U[-2, 2]), an injected non-PSD star, and kernel stability
/// on random PSD stars (d <= 8, m_max = 8). Throws std::invalid_argument for
/// trials = 0.
Report cmd_star_suite(const RunOptions& options);

/// Thresholding a * ones to g. The tested claim is "the image stays PSD", so
/// the verdict is fail with the 3x3 block as certificate whenever g has an
/// open triangle.
Report cmd_thresholding(const Graph& g, double a, const RunOptions& options);

/// Re-validates a matrix certificate: spectral test, plus the elimination
/// test when the matrix pattern fits the given forest.
Report cmd_check_matrix(const SymMatrix& a, const std::optional<Graph>& forest,
                        const RunOptions& options);

/// Boundary band of the agreement suites: |lambda_min| <= band * lambda_max,
/// where the spectral verdict is not trusted.
bool in_boundary_band(const PsdVerdict& v, double band = 1e-9);

/// Star with d leaves, every entry U[-2, 2].
StarMatrix random_star_uniform(Rng& rng, std::size_t d);

/// PSD star with d leaves mixing generic draws, zero leaves (p_i = alpha_i =
/// 0), decoupled leaves (alpha_i = 0) and boundary stars with
/// p_1 = sum alpha_i^2 / p_i.
StarMatrix random_psd_star(Rng& rng, std::size_t d);

}  // namespace graphpos
