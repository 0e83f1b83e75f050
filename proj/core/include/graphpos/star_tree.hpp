#pragma once

// Structured PSD characterizations for star and tree patterns.

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

#include "graphpos/graph.hpp"
#include "graphpos/sym_matrix.hpp"
#include "graphpos/tree_matrix.hpp"

namespace graphpos {

/// Symmetric matrix with zeros according to a star: center 0 with diagonal
/// p[0], leaf i (1..d) with diagonal p[i] and center coupling alpha[i - 1].
struct StarMatrix {
  std::vector<double> p;      // size d + 1
  std::vector<double> alpha;  // size d

  std::size_t leaves() const noexcept { return alpha.size(); }
  /// Throws std::invalid_argument unless p.size() == alpha.size() + 1.
  void validate() const;
  SymMatrix to_sym() const;
  /// Reads p and alpha from a matrix whose pattern lies in the star centered
  /// at 0; throws PatternViolation otherwise.
  static StarMatrix from_sym(const SymMatrix& a);
};

struct StarVerdict {
  bool is_psd = false;
  /// 0 when PSD; otherwise 1 (negative diagonal), 2 (zero leaf diagonal with
  /// nonzero coupling) or 3 (center below sum alpha_i^2 / p_i).
  int failed_condition = 0;
  /// Offending vertex for conditions 1 and 2; 0 for condition 3.
  std::size_t vertex = 0;
  /// p_0 - sum_{p_i != 0} alpha_i^2 / p_i (meaningful once 1 and 2 hold).
  double slack = 0.0;

  explicit operator bool() const noexcept { return is_psd; }
};

/// Exact three-condition criterion (no tolerance; zero tests are exact).
StarVerdict star_psd_check(const StarMatrix& s);

struct StarFactor {
  double a_m = 0.0;
  /// Upper-triangular: row 0 = (sqrt(a_m), alpha_i^m p_i^{-m/2}),
  /// diagonal p_i^{m/2}; L L^T = A^{o m}.
  Eigen::MatrixXd factor;
};

/// Factor of the m-th Hadamard power of a PSD star matrix. Throws
/// std::domain_error if the star is not PSD or a_m < 0 beyond rounding.
StarFactor star_factor(const StarMatrix& s, unsigned m);

/// prod p_i - sum_{i>0} alpha_i^2 prod_{j>0, j!=i} p_j, valid for any reals.
double star_det(const StarMatrix& s);

/// Ascending eigenvalues when all leaf diagonals are equal (exactly);
/// std::invalid_argument otherwise.
std::vector<double> star_eigenvalues_equal_p(const StarMatrix& s);

struct TreeEliminationResult {
  bool is_psd = false;
  /// Smallest pivot seen (after the tolerance shift).
  double min_pivot = 0.0;
  /// Vertex whose pivot or coupling failed, if any.
  std::optional<std::size_t> failed_vertex;
};

/// Leaf-by-leaf Schur complement elimination on A + tau I, where
/// tau = tol * max(1, max_i |a_ii|). A leaf v with neighbor u fails if its
/// pivot is negative, or zero with a_uv != 0; otherwise a_uu -= a_uv^2 / a_vv.
/// Vertices left alone must have a nonnegative pivot. tol = 0 gives the
/// exact-arithmetic test. Runs in O(n) and never mutates its argument.
TreeEliminationResult tree_psd_eliminate(const TreeMatrix& a, double tol = kDefaultPsdTolerance);

bool tree_psd_check(const TreeMatrix& a, double tol = kDefaultPsdTolerance);
/// Throws PatternViolation if pattern_of(a) is not contained in t, and
/// std::invalid_argument if t is not a forest.
bool tree_psd_check(const SymMatrix& a, const Graph& t, double tol = kDefaultPsdTolerance);

}  // namespace graphpos
