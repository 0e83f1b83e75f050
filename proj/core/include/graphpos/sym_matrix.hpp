#pragma once

// Dense real symmetric matrices, Hadamard powers, quadratic forms and the
// spectral PSD oracle.

#include <Eigen/Dense>

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "graphpos/graph.hpp"

namespace graphpos {

/// Dense symmetric matrix. Writes go through set(), which mirrors the entry,
/// so a(i, j) == a(j, i) holds bit-for-bit. Entries are always finite.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n);
  /// Throws std::invalid_argument if `m` is not square, not exactly
  /// symmetric, or has a non-finite entry.
  explicit SymMatrix(Eigen::MatrixXd m);
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static SymMatrix zeros(std::size_t n) { return SymMatrix(n); }
  static SymMatrix identity(std::size_t n);
  static SymMatrix constant(std::size_t n, double value);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  void set(std::size_t i, std::size_t j, double value);

  const Eigen::MatrixXd& dense() const noexcept { return m_; }

  double max_abs() const;
  double frobenius_norm() const { return m_.norm(); }

  /// Principal submatrix on the given (distinct) indices.
  SymMatrix principal(std::span<const std::size_t> indices) const;

  friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  Eigen::MatrixXd m_;
};

struct PsdVerdict {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double spectral_radius = 0.0;
  double tolerance_used = 0.0;
};

inline constexpr double kDefaultPsdTolerance = 1e-9;

/// Graph with an edge {i, j} exactly where a(i, j) != 0 (i != j).
Graph pattern_of(const SymMatrix& a);

/// Entrywise power. Exponent 0 yields the 0/1 support matrix (an entry is 1
/// iff it is nonzero). Non-integer exponents require nonnegative entries;
/// otherwise std::domain_error.
SymMatrix hadamard_power(const SymMatrix& a, double exponent);

/// beta^T A beta. Throws std::invalid_argument on a length mismatch.
double quadratic_form(const SymMatrix& a, std::span<const double> beta);

/// Ascending eigenvalues (symmetric QR via Eigen).
std::vector<double> eigenvalues(const SymMatrix& a);

/// PSD iff lambda_min >= -tol * max(1, spectral radius).
PsdVerdict is_psd(const SymMatrix& a, double tol = kDefaultPsdTolerance);

/// f_G[A]: f on the diagonal and on edges of g, zero elsewhere.
template <typename F>
  requires std::invocable<const F&, double>
SymMatrix apply_entrywise(const F& f, const SymMatrix& a, const Graph& g);

/// Random A in P_G([0, range_max)) for a forest g, generated as L L^T with
/// L supported on a leaf-first elimination of g. Throws std::invalid_argument
/// for non-forests or range_max <= 0.
SymMatrix random_psd_with_pattern(const Graph& g, double range_max,
                                  std::uint64_t seed);

// Text format: first line "n", then "i j value" per stored upper-triangle
// entry (i <= j); omitted entries are zero. Writers emit nonzero entries in
// (i, j) order with round-trip precision.
SymMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const SymMatrix& a);
SymMatrix parse_matrix(const std::string& text);
std::string format_matrix(const SymMatrix& a);

// ---------------------------------------------------------------------------

template <typename F>
  requires std::invocable<const F&, double>
SymMatrix apply_entrywise(const F& f, const SymMatrix& a, const Graph& g) {
  if (g.order() != a.dim()) {
    throw std::invalid_argument("apply_entrywise: graph order " +
                                std::to_string(g.order()) +
                                " does not match matrix dimension " +
                                std::to_string(a.dim()));
  }
  SymMatrix out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.set(i, i, f(a(i, i)));
  for (const auto& e : g.edges()) out.set(e.u, e.v, f(a(e.u, e.v)));
  return out;
}

}  // namespace graphpos
