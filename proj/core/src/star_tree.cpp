#include "graphpos/star_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphpos {

void StarMatrix::validate() const {
  if (p.size() != alpha.size() + 1) {
    throw std::invalid_argument("star matrix: expected d + 1 diagonal entries for d leaves");
  }
}

SymMatrix StarMatrix::to_sym() const {
  validate();
  SymMatrix a(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) a.set(i, i, p[i]);
  for (std::size_t i = 0; i < alpha.size(); ++i) a.set(0, i + 1, alpha[i]);
  return a;
}

StarMatrix StarMatrix::from_sym(const SymMatrix& a) {
  if (a.dim() == 0) throw std::invalid_argument("star matrix: empty matrix");
  for (std::size_t i = 1; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      if (a(i, j) != 0.0) {
        throw PatternViolation("star matrix: nonzero leaf-leaf entry");
      }
  StarMatrix s;
  for (std::size_t i = 0; i < a.dim(); ++i) s.p.push_back(a(i, i));
  for (std::size_t i = 1; i < a.dim(); ++i) s.alpha.push_back(a(0, i));
  return s;
}

StarVerdict star_psd_check(const StarMatrix& s) {
  s.validate();
  StarVerdict v;
  for (std::size_t i = 0; i < s.p.size(); ++i)
    if (s.p[i] < 0.0) {
      v.failed_condition = 1;
      v.vertex = i;
      return v;
    }
  double sum = 0.0;
  for (std::size_t i = 0; i < s.alpha.size(); ++i) {
    const double pi = s.p[i + 1];
    if (pi == 0.0) {
      if (s.alpha[i] != 0.0) {
        v.failed_condition = 2;
        v.vertex = i + 1;
        return v;
      }
      continue;
    }
    sum += s.alpha[i] * s.alpha[i] / pi;
  }
  v.slack = s.p[0] - sum;
  if (v.slack < 0.0) {
    v.failed_condition = 3;
    return v;
  }
  v.is_psd = true;
  return v;
}

StarFactor star_factor(const StarMatrix& s, unsigned m) {
  if (m == 0) throw std::invalid_argument("star_factor: order must be positive");
  if (!star_psd_check(s)) {
    throw std::domain_error("star_factor: matrix is not positive semidefinite");
  }
  const double md = static_cast<double>(m);
  const double center = std::pow(s.p[0], md);
  double sum = 0.0;
  for (std::size_t i = 0; i < s.alpha.size(); ++i) {
    const double pi = s.p[i + 1];
    if (pi != 0.0) sum += std::pow(s.alpha[i] * s.alpha[i] / pi, md);
  }
  double a_m = center - sum;
  if (a_m < 0.0) {
    // Rounding at the boundary p_0 = sum alpha^2 / p; genuine failures are
    // excluded by the PSD precondition.
    if (a_m < -1e-12 * std::max(center, sum)) {
      throw std::domain_error("star_factor: a_m < 0, factorization undefined");
    }
    a_m = 0.0;
  }
  const auto n = static_cast<Eigen::Index>(s.p.size());
  StarFactor out{a_m, Eigen::MatrixXd::Zero(n, n)};
  out.factor(0, 0) = std::sqrt(a_m);
  for (Eigen::Index i = 1; i < n; ++i) {
    const double pi = s.p[static_cast<std::size_t>(i)];
    const double ai = s.alpha[static_cast<std::size_t>(i - 1)];
    out.factor(i, i) = std::pow(pi, md / 2.0);
    out.factor(0, i) = pi == 0.0 ? 0.0 : std::pow(ai, md) * std::pow(pi, -md / 2.0);
  }
  return out;
}

double star_det(const StarMatrix& s) {
  s.validate();
  double prod_all = 1.0;
  for (double pi : s.p) prod_all *= pi;
  double correction = 0.0;
  for (std::size_t i = 0; i < s.alpha.size(); ++i) {
    double prod_others = 1.0;
    for (std::size_t j = 0; j < s.alpha.size(); ++j)
      if (j != i) prod_others *= s.p[j + 1];
    correction += s.alpha[i] * s.alpha[i] * prod_others;
  }
  return prod_all - correction;
}

std::vector<double> star_eigenvalues_equal_p(const StarMatrix& s) {
  s.validate();
  const std::size_t d = s.leaves();
  if (d == 0) return {s.p[0]};
  const double q = s.p[1];
  for (std::size_t i = 2; i <= d; ++i)
    if (s.p[i] != q) {
      throw std::invalid_argument(
          "star_eigenvalues_equal_p: leaf diagonal entries are not all equal");
    }
  double alpha_sq = 0.0;
  for (double a : s.alpha) alpha_sq += a * a;
  const double gap = s.p[0] - q;
  const double root = std::sqrt(gap * gap + 4.0 * alpha_sq);
  std::vector<double> ev(d - 1, q);
  ev.push_back((s.p[0] + q + root) / 2.0);
  ev.push_back((s.p[0] + q - root) / 2.0);
  std::sort(ev.begin(), ev.end());
  return ev;
}

TreeEliminationResult tree_psd_eliminate(const TreeMatrix& a, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("tree_psd_check: tolerance must be >= 0");
  const std::size_t n = a.forest.order();
  if (a.diagonal.size() != n || a.edge_values.size() != a.forest.size()) {
    throw std::invalid_argument("tree_psd_check: inconsistent tree matrix");
  }
  double scale = 1.0;
  for (double d : a.diagonal) scale = std::max(scale, std::abs(d));
  const double shift = tol * scale;

  std::vector<double> pivot(a.diagonal);
  for (double& d : pivot) d += shift;

  TreeEliminationResult result;
  result.min_pivot = n == 0 ? 0.0 : pivot[0];
  auto fail = [&](std::size_t v) {
    result.is_psd = false;
    result.failed_vertex = v;
    return result;
  };
  for (const auto& step : leaf_elimination_order(a.forest)) {
    const double pv = pivot[step.vertex];
    result.min_pivot = std::min(result.min_pivot, pv);
    if (pv < 0.0) return fail(step.vertex);
    if (step.parent == kNoParent) continue;
    const double coupling = a.edge_values[step.edge];
    if (pv == 0.0) {
      if (coupling != 0.0) return fail(step.vertex);
      continue;
    }
    pivot[step.parent] -= coupling * coupling / pv;
  }
  result.is_psd = true;
  return result;
}

bool tree_psd_check(const TreeMatrix& a, double tol) {
  return tree_psd_eliminate(a, tol).is_psd;
}

bool tree_psd_check(const SymMatrix& a, const Graph& t, double tol) {
  return tree_psd_check(to_tree_matrix(a, t), tol);
}

}  // namespace graphpos
