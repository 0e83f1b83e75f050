#include "graphpos/witnesses.hpp"

#include <Eigen/SVD>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "graphpos/constructors.hpp"

namespace graphpos {

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

double squared_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

// Modified Gram-Schmidt with one re-orthogonalization pass.
Eigen::VectorXd project_out(const std::vector<Eigen::VectorXd>& basis, Eigen::VectorXd v) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : basis) v -= q.dot(v) * q;
  return v;
}

// Scales beta so its first entry of significant size equals 1.
std::vector<double> present(const Eigen::VectorXd& v) {
  const double largest = v.cwiseAbs().maxCoeff();
  double pivot = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) >= 0.1 * largest) {
      pivot = v(i);
      break;
    }
  std::vector<double> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v(i) / pivot;
  return out;
}

void require_distinct_nonzero(const std::vector<double>& alphas, const char* who) {
  std::set<double> seen;
  for (double a : alphas) {
    if (a == 0.0 || !std::isfinite(a)) {
      throw std::invalid_argument(std::string(who) + ": alphas must be finite and nonzero");
    }
    if (!seen.insert(a).second) {
      throw std::invalid_argument(std::string(who) + ": alphas must be pairwise distinct");
    }
  }
}

WitnessSet embed(const WitnessSet& local, const std::vector<std::size_t>& index_map,
                 std::size_t n, std::string label) {
  WitnessSet out{std::move(label), SymMatrix(n), {}};
  const auto& m = local.matrix;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      if (m(i, j) != 0.0) out.matrix.set(index_map[i], index_map[j], m(i, j));
  for (const auto& w : local.witnesses) {
    std::vector<double> beta(n, 0.0);
    for (std::size_t i = 0; i < w.beta.size(); ++i) beta[index_map[i]] = w.beta[i];
    out.witnesses.push_back(measure_witness(out.matrix, std::move(beta), w.k));
  }
  return out;
}

}  // namespace

Witness measure_witness(const SymMatrix& a, std::vector<double> beta, unsigned k) {
  if (beta.size() != a.dim()) {
    throw std::invalid_argument("witness: vector length does not match matrix dimension");
  }
  Witness w;
  w.k = k;
  const double norm2 = squared_norm(beta);
  if (norm2 > 0.0) {
    for (unsigned m = 0; m < k; ++m) {
      const SymMatrix power = hadamard_power(a, m);
      const double q = quadratic_form(power, beta);
      const double scale = norm2 * power.frobenius_norm();
      const double residual =
          scale > 0.0 ? std::abs(q) / scale : (q == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
      w.kernel_residual = std::max(w.kernel_residual, residual);
    }
    w.positivity_margin = quadratic_form(hadamard_power(a, k), beta) / norm2;
  }
  w.beta = std::move(beta);
  return w;
}

bool certifies(const Witness& w, const CertificationTolerance& tol) {
  return w.kernel_residual <= tol.kernel && w.positivity_margin > tol.positivity;
}

bool nk_membership(const SymMatrix& a, const std::vector<double>& beta, unsigned k,
                   const CertificationTolerance& tol) {
  return certifies(measure_witness(a, beta, k), tol);
}

bool self_certifies(const WitnessSet& set, const CertificationTolerance& tol) {
  return std::all_of(set.witnesses.begin(), set.witnesses.end(), [&](const Witness& w) {
    return nk_membership(set.matrix, w.beta, w.k, tol);
  });
}

std::size_t eta_bound(const SymMatrix& a) {
  std::set<double> distinct;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j)
      if (a(i, j) != 0.0) distinct.insert(a(i, j));
  return distinct.size();
}

WitnessSet vandermonde_witnesses(const std::vector<double>& alphas) {
  require_distinct_nonzero(alphas, "vandermonde_witnesses");
  const auto n = static_cast<Eigen::Index>(alphas.size());
  if (n < 2) throw std::invalid_argument("vandermonde_witnesses: need at least 2 alphas");

  Eigen::VectorXd alpha(n);
  for (Eigen::Index i = 0; i < n; ++i) alpha(i) = alphas[static_cast<std::size_t>(i)];
  WitnessSet set{"vandermonde", SymMatrix(Eigen::MatrixXd(alpha * alpha.transpose())), {}};

  auto power = [&](unsigned k) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = std::pow(alpha(i), static_cast<double>(k));
    return v;
  };
  std::vector<Eigen::VectorXd> basis{power(0).normalized()};
  for (unsigned k = 1; k < static_cast<unsigned>(n); ++k) {
    const Eigen::VectorXd residual = project_out(basis, power(k));
    set.witnesses.push_back(measure_witness(set.matrix, present(residual), k));
    basis.push_back(residual.normalized());
  }
  return set;
}

WitnessSet star_witnesses(std::size_t d, const std::vector<double>& alphas,
                          std::size_t ambient_n, std::optional<std::size_t> max_order) {
  if (d == 0) throw std::invalid_argument("star_witnesses: degree must be >= 1");
  if (alphas.size() != d + 1) {
    throw std::invalid_argument("star_witnesses: expected d + 1 alphas");
  }
  if (ambient_n < d + 1) {
    throw std::invalid_argument("star_witnesses: ambient dimension must be >= d + 1");
  }
  require_distinct_nonzero(alphas, "star_witnesses");
  const std::size_t top = std::min(d, max_order.value_or(d));
  if (top == d && !(alphas[0] > *std::max_element(alphas.begin() + 1, alphas.end()))) {
    throw std::domain_error(
        "star_witnesses: the order-d witness needs alphas[0] > every other alpha "
        "(otherwise e_1 and alpha^(d) fall on opposite sides of V_d)");
  }

  const auto local = static_cast<Eigen::Index>(d + 1);
  auto power = [&](unsigned k) {
    Eigen::VectorXd v(local);
    for (Eigen::Index i = 0; i < local; ++i)
      v(i) = std::pow(alphas[static_cast<std::size_t>(i)], static_cast<double>(k));
    v(0) /= 2.0;
    return v;
  };
  const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(local, 0);

  // A = e_1 alpha^(1)^T + alpha^(1) e_1^T.
  const Eigen::VectorXd a1 = power(1);
  SymMatrix a(ambient_n);
  for (Eigen::Index i = 0; i < local; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    a.set(0, ui, i == 0 ? 2.0 * a1(0) : a1(i));
  }
  WitnessSet set{"star", a, {}};

  auto lift = [&](const Eigen::VectorXd& local_beta) {
    auto beta = present(local_beta);
    beta.resize(ambient_n, 0.0);
    return beta;
  };

  std::vector<Eigen::VectorXd> basis{power(0).normalized()};
  for (unsigned k = 1; k < d && k <= top; ++k) {
    const Eigen::VectorXd pa = project_out(basis, power(k));
    const Eigen::VectorXd pe = project_out(basis, e1);
    const Eigen::VectorXd beta = pa.normalized() + pe.normalized();
    set.witnesses.push_back(measure_witness(set.matrix, lift(beta), k));
    basis.push_back(pa.normalized());
  }
  if (top == d) {
    // Extend the basis to V_d before taking the complement of e_1.
    while (basis.size() < d) {
      basis.push_back(project_out(basis, power(static_cast<unsigned>(basis.size()))).normalized());
    }
    const Eigen::VectorXd beta = project_out(basis, e1);
    Witness w = measure_witness(set.matrix, lift(beta), static_cast<unsigned>(d));
    if (!certifies(w)) {
      throw std::domain_error("star_witnesses: order-d witness failed certification");
    }
    set.witnesses.push_back(std::move(w));
  }
  return set;
}

KBounds k_lower_bound(const Graph& g) {
  if (g.size() == 0) throw std::invalid_argument("k_lower_bound: graph has no edges");
  KBounds out;
  const std::size_t delta = max_degree(g);
  out.lower = std::max<std::size_t>(2, delta);
  out.upper = g.order() + g.size();

  // 2x2 pair: A_j = [[a, (a+b)/(2(3-j))], [., b]] with a = 1, b = 2, beta = (1, -1).
  const auto [u, v] = g.edges().front();
  for (unsigned j = 1; j <= 2; ++j) {
    const double off = 3.0 / (2.0 * (3.0 - j));
    WitnessSet local{"", SymMatrix{{1.0, off}, {off, 2.0}}, {}};
    local.witnesses.push_back(measure_witness(local.matrix, {1.0, -1.0}, j));
    out.witnesses.push_back(embed(local, {u, v}, g.order(), "edge_pair_order" + std::to_string(j)));
  }

  std::size_t center = 0;
  while (g.degree(center) != delta) ++center;
  std::vector<double> alphas{2.0 * static_cast<double>(delta) + 1.0};
  for (std::size_t i = 1; i <= delta; ++i) alphas.push_back(static_cast<double>(i));
  std::vector<std::size_t> index_map{center};
  const auto& nbrs = g.neighbors(center);
  index_map.insert(index_map.end(), nbrs.begin(), nbrs.end());
  out.witnesses.push_back(
      embed(star_witnesses(delta, alphas, delta + 1), index_map, g.order(), "star_at_max_degree"));
  return out;
}

bool pattern_psd_check(const SymMatrix& a) {
  // A^{o 0} is PSD iff, up to permutation, it is 0 (+) J_{n_1} (+) ... (+) J_{n_r}:
  // zero-diagonal rows vanish and the support of every other row is a clique
  // containing it.
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) == 0.0) continue;
      if (a(i, i) == 0.0 || a(j, j) == 0.0) return false;
      for (std::size_t k = 0; k < n; ++k)
        if ((a(i, k) != 0.0) != (a(j, k) != 0.0)) return false;
    }
  }
  return true;
}

KernelStabilityResult star_kernel_stability_detail(const StarMatrix& s, unsigned m_max) {
  if (!star_psd_check(s)) {
    throw std::domain_error("star_kernel_stability: matrix is not positive semidefinite");
  }
  const auto l1 = star_factor(s, 1).factor;
  const auto l2 = star_factor(s, 2).factor;
  const Eigen::Index n = l1.rows();
  Eigen::MatrixXd stacked(2 * n, n);
  stacked << l1.transpose(), l2.transpose();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double cutoff = 1e-9 * std::max(sigma.size() ? sigma(0) : 0.0, 1e-300);

  KernelStabilityResult result;
  const SymMatrix a = s.to_sym();
  std::vector<SymMatrix> powers;
  for (unsigned m = 3; m <= m_max; ++m) powers.push_back(hadamard_power(a, m));
  for (Eigen::Index c = 0; c < n; ++c) {
    const double sv = c < sigma.size() ? sigma(c) : 0.0;
    if (sv > cutoff) continue;
    ++result.kernel_dimension;
    const Eigen::VectorXd basis_vector = svd.matrixV().col(c);
    const std::vector<double> beta(basis_vector.data(), basis_vector.data() + n);
    for (const auto& power : powers) {
      const double scale = power.frobenius_norm();
      if (scale == 0.0) continue;
      const double residual = std::abs(quadratic_form(power, beta)) / scale;
      result.worst_residual = std::max(result.worst_residual, residual);
    }
  }
  result.stable = result.worst_residual <= 1e-9;
  return result;
}

bool star_kernel_stability(const StarMatrix& s, unsigned m_max) {
  return star_kernel_stability_detail(s, m_max).stable;
}

DerivativeSignEstimate derivative_sign_estimate(const EntrywiseFunction& f, double a, unsigned k,
                                                const SymMatrix& matrix,
                                                const std::vector<double>& beta,
                                                std::vector<double> t_steps) {
  if (!(a > 0.0)) throw std::invalid_argument("derivative_sign_estimate: base point must be > 0");
  if (!nk_membership(matrix, beta, k)) {
    throw std::invalid_argument("derivative_sign_estimate: beta is not certified in N_k(A)");
  }
  const double largest = matrix.max_abs();
  if (t_steps.empty()) {
    const double t0 = std::exp2(std::floor(std::log2(a / (8.0 * largest))));
    for (int j = 0; j <= 10; ++j) t_steps.push_back(std::ldexp(t0, -j));
  }
  const std::size_t n = matrix.dim();
  for (double t : t_steps) {
    if (!(t > 0.0)) throw std::invalid_argument("derivative_sign_estimate: steps must be > 0");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (matrix(i, j) != 0.0 && !f.in_domain(a + t * matrix(i, j))) {
          throw std::domain_error("derivative_sign_estimate: a + t a_ij leaves the domain of f");
        }
  }

  Quad k_factorial = 1;
  for (unsigned i = 2; i <= k; ++i) k_factorial *= i;

  DerivativeSignEstimate out;
  std::vector<Quad> nodes, values;
  for (double t : t_steps) {
    const Quad tq = t;
    Quad form = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (beta[i] == 0.0) continue;
      Quad row = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (matrix(i, j) == 0.0 || beta[j] == 0.0) continue;
        row += Quad(beta[j]) * f.value_as<Quad>(Quad(a) + tq * Quad(matrix(i, j)));
      }
      form += Quad(beta[i]) * row;
    }
    const Quad g = form * k_factorial / pow(tq, static_cast<int>(k));
    nodes.push_back(tq);
    values.push_back(g);
    out.t_values.push_back(t);
    out.g_values.push_back(static_cast<double>(g));
  }

  // Neville's scheme evaluated at t = 0.
  std::vector<Quad> p = values;
  for (std::size_t m = 1; m < p.size(); ++m)
    for (std::size_t i = 0; i + m < p.size(); ++i)
      p[i] = (nodes[i] * p[i + 1] - nodes[i + m] * p[i]) / (nodes[i] - nodes[i + m]);
  out.limit_estimate = p.empty() ? 0.0 : static_cast<double>(p[0]);
  out.analytic_value = f.eval(a, k) * quadratic_form(hadamard_power(matrix, k), beta);
  return out;
}

nlohmann::ordered_json to_json(const Witness& w) {
  nlohmann::ordered_json j;
  j["k"] = w.k;
  j["beta"] = w.beta;
  j["kernel_residual"] = w.kernel_residual;
  j["positivity_margin"] = w.positivity_margin;
  return j;
}

nlohmann::ordered_json to_json(const WitnessSet& set) {
  nlohmann::ordered_json j;
  j["label"] = set.label;
  j["matrix"] = format_matrix(set.matrix);
  j["witnesses"] = nlohmann::ordered_json::array();
  for (const auto& w : set.witnesses) j["witnesses"].push_back(to_json(w));
  return j;
}

}  // namespace graphpos
