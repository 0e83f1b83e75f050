#pragma once

// Thresholds for negative middle coefficients, tree-preserving polynomials
// that are not absolutely monotonic, and counterexample matrices.

#include <cstddef>
#include <string>
#include <vector>

#include "graphpos/graph.hpp"
#include "graphpos/power_sum.hpp"
#include "graphpos/sym_matrix.hpp"

namespace graphpos {

enum class ThresholdKind { superadditive, mult_convex };

std::string to_string(ThresholdKind kind);

struct ThresholdReport {
  ThresholdKind kind = ThresholdKind::superadditive;
  double threshold = 0.0;
  std::vector<double> exponents;     // (r, s) or (r', r, s, s')
  std::vector<double> coefficients;  // matching flank coefficients
  /// Positivity threshold for the negative coefficients of x Psi_g
  /// (mult_convex only).
  double psi_threshold = 0.0;
};

/// nu' = r (r - 1) / (s (s - 1)) * min(c_r, c_s). For any beta in (r, s) and
/// c_beta > -nu', c_r x^r + c_beta x^beta + c_s x^s is nonnegative,
/// increasing and superadditive on [0, inf). Requires 1 < r < s, c > 0.
ThresholdReport superadditivity_threshold(double r, double s, double c_r, double c_s);

/// lambda = nu'' / (max(c) (s' - r')^2), where nu'' = min(c_r c_r' (r - r')^2,
/// c_s c_s' (s' - s)^2) / 4 bounds the four negative coefficients
/// c_beta c_t (t - beta)^2 of x Psi_g by its two extreme terms. For beta in
/// (r, s) and c_beta in (-lambda, 0),
/// g = c_r' x^r' + c_r x^r + c_beta x^beta + c_s x^s + c_s' x^s' has Psi_g > 0
/// on (0, inf). Requires 0 <= r' < r < s < s' and positive coefficients.
ThresholdReport mult_convexity_threshold(double r_prime, double r, double s, double s_prime,
                                         double c_r_prime, double c_r, double c_s,
                                         double c_s_prime);

/// Coefficient shared by every negative middle term of the block
/// x^base (1 + x - c x^2 - ... - c x^{n+1} + x^{n+2} + x^{n+3}) (n = n_neg):
/// half the smaller of the two thresholds computed with the flank
/// coefficients split evenly over the n middle exponents.
double negative_block_coefficient(double base_exponent, std::size_t n_neg);

/// x^1 (1 + x + a_2 x^2 + ... + a_{n+1} x^{n+1} + x^{n+2} + x^{n+3}) with
/// a_k = -negative_block_coefficient(1, n) < 0: superadditive, multiplicatively
/// convex, not absolutely monotonic. Requires n_neg >= 1.
EntrywiseFunction build_tree_preserver_poly(std::size_t n_neg);

/// Largest block count N whose partial sum has normal, finite coefficients.
std::size_t max_entire_blocks();

/// Partial sum sum_{n=1}^{N} p_n(x) / (r_n + n + 3)! with q_n = n + 4,
/// r_n = q_1 + ... + q_n and p_n the block above with base exponent r_n.
/// Throws std::range_error beyond max_entire_blocks().
EntrywiseFunction build_entire_function_partial(std::size_t n_blocks);

/// Length of the longest run of consecutive negative coefficients in the
/// power-series coefficient sequence (a_0, a_1, ...) of f (integer exponents).
std::size_t longest_negative_run(const EntrywiseFunction& f);

/// c B(2, 1, 1) (c = R / 4) placed on the first open triangle of a tree with
/// at least 3 vertices: PSD with entries < R, while its alpha-th Hadamard power
/// is not. Throws std::invalid_argument unless 0 < alpha < 1.
SymMatrix fractional_power_counterexample(const Graph& t, double alpha, double range_max);

struct ThresholdingCounterexample {
  SymMatrix matrix;     // a * ones
  SymMatrix image;      // f_G[matrix] for f = identity
  OpenTriangle triangle;
  SymMatrix block;      // principal 3x3 block of image on the triangle
  double block_det = 0.0;
};

/// A = a * ones is PSD but thresholding it to G leaves the non-PSD block
/// a B(1, 1, 1) with determinant -a^3. Throws std::invalid_argument if G has
/// no open triangle (every component complete) or a <= 0.
ThresholdingCounterexample thresholding_counterexample(const Graph& g, double a);

/// B(mu, alpha, beta) = [[mu, alpha, beta], [alpha, alpha, 0], [beta, 0, beta]].
SymMatrix b3_matrix(double mu, double alpha, double beta);

/// B(mu, alpha, beta) placed on an open triangle of an n-vertex matrix.
SymMatrix embed_b3(std::size_t n, const OpenTriangle& tri, double mu, double alpha, double beta);

/// 3x3 determinant by cofactor expansion.
double det3(const SymMatrix& a);

}  // namespace graphpos
