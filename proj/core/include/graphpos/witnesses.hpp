#pragma once

// Witness vectors for quadratic forms of Hadamard powers.
//
// beta lies in N_k(A) when Q_{A^{o m}}(beta) = 0 for m = 0..k-1 and
// Q_{A^{o k}}(beta) > 0; for k = 0 only the positivity condition applies.
// Certification is numerical: a kernel condition holds when
// |Q_{A^{o m}}(beta)| <= kernel_tol * |beta|^2 * |A^{o m}|_F, positivity when
// Q_{A^{o k}}(beta) > positivity_tol * |beta|^2.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "graphpos/graph.hpp"
#include "graphpos/power_sum.hpp"
#include "graphpos/star_tree.hpp"
#include "graphpos/sym_matrix.hpp"

#include <nlohmann/json.hpp>

namespace graphpos {

struct CertificationTolerance {
  double kernel = 1e-10;
  double positivity = 1e-8;
};

struct Witness {
  unsigned k = 0;
  std::vector<double> beta;
  /// max over m < k of |Q_{A^{o m}}(beta)| / (|beta|^2 |A^{o m}|_F).
  double kernel_residual = 0.0;
  /// Q_{A^{o k}}(beta) / |beta|^2.
  double positivity_margin = 0.0;
};

struct WitnessSet {
  std::string label;
  SymMatrix matrix;
  std::vector<Witness> witnesses;
};

/// Residuals of beta against A at order k (no pass/fail decision).
Witness measure_witness(const SymMatrix& a, std::vector<double> beta, unsigned k);

bool certifies(const Witness& w, const CertificationTolerance& tol = {});

/// Throws std::invalid_argument on a dimension mismatch.
bool nk_membership(const SymMatrix& a, const std::vector<double>& beta, unsigned k,
                   const CertificationTolerance& tol = {});

/// True iff every stored witness re-certifies against the stored matrix.
bool self_certifies(const WitnessSet& set, const CertificationTolerance& tol = {});

/// Number of distinct nonzero entries; N_k(A) is empty for k >= eta(A).
std::size_t eta_bound(const SymMatrix& a);

/// A = alpha alpha^T with witnesses for k = 1..n-1 built by projecting
/// alpha^{(k)} onto the orthogonal complement of alpha^{(0)}, ..., alpha^{(k-1)}.
/// Throws std::invalid_argument for zero or repeated alphas.
WitnessSet vandermonde_witnesses(const std::vector<double>& alphas);

/// A = e_1 alpha^{(1)T} + alpha^{(1)} e_1^T with alpha^{(k)} = (alpha_1^k / 2,
/// alpha_2^k, ..., alpha_{d+1}^k, 0, ...) in dimension ambient_n. Witnesses
/// for k < d bisect the projections of alpha^{(k)} and e_1 onto
/// span(alpha^{(0)}, ..., alpha^{(k-1)})^perp; the k = d witness spans the
/// one-dimensional complement inside the first d + 1 coordinates and needs
/// alphas[0] > max(alphas[1..]). With max_order < d the top order is skipped.
/// Throws std::invalid_argument on bad input and std::domain_error when the
/// top-order witness fails certification.
WitnessSet star_witnesses(std::size_t d, const std::vector<double>& alphas,
                          std::size_t ambient_n, std::optional<std::size_t> max_order = {});

struct KBounds {
  std::size_t lower = 0;  // max(2, max degree)
  std::size_t upper = 0;  // |V| + |E| (strict: k_G < upper)
  std::vector<WitnessSet> witnesses;
};

/// Lower bound on k_G with certifying witnesses: the 2x2 pair on the first
/// edge and star witnesses at the first maximum-degree vertex
/// (alphas (2d + 1, 1, 2, ..., d)). Throws std::invalid_argument for edgeless g.
KBounds k_lower_bound(const Graph& g);

/// True iff A^{o 0} is PSD, i.e. a permutation of 0 (+) J_{n_1} (+) ... (+)
/// J_{n_r} with J the all-ones block. For patterns of graphs without edges
/// this is 0 (+) Id.
bool pattern_psd_check(const SymMatrix& a);

struct KernelStabilityResult {
  bool stable = true;
  std::size_t kernel_dimension = 0;
  double worst_residual = 0.0;  // relative, over m = 3..m_max
};

/// Basis of ker Q_A cap ker Q_{A o A} (null space of [L_1^T; L_2^T]) checked
/// against Q_{A^{o m}} for m = 3..m_max within 1e-9 relative. Throws
/// std::domain_error for non-PSD stars.
KernelStabilityResult star_kernel_stability_detail(const StarMatrix& s, unsigned m_max);
bool star_kernel_stability(const StarMatrix& s, unsigned m_max);

struct DerivativeSignEstimate {
  double limit_estimate = 0.0;
  double analytic_value = 0.0;
  std::vector<double> t_values;
  std::vector<double> g_values;  // k! / t^k * beta^T f[a A^{o 0} + t A] beta
};

/// Extrapolates g(t) = k! t^{-k} beta^T f[a A^{o 0} + t A] beta to t -> 0+
/// (f applied on the support of A, zero elsewhere) by polynomial
/// extrapolation in extended precision, and returns it next to
/// f^{(k)}(a) Q_{A^{o k}}(beta). Default steps: t_0 2^{-j}, j = 0..10, with
/// t_0 the largest power of two <= a / (8 max|a_ij|). Throws
/// std::invalid_argument if beta is not certified in N_k(A) and
/// std::domain_error if a + t a_ij leaves the domain of f.
DerivativeSignEstimate derivative_sign_estimate(const EntrywiseFunction& f, double a, unsigned k,
                                                const SymMatrix& matrix,
                                                const std::vector<double>& beta,
                                                std::vector<double> t_steps = {});

nlohmann::ordered_json to_json(const Witness& w);
nlohmann::ordered_json to_json(const WitnessSet& set);

}  // namespace graphpos
