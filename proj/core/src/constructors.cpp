#include "graphpos/constructors.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace graphpos {

std::string to_string(ThresholdKind kind) {
  return kind == ThresholdKind::superadditive ? "superadditive" : "mult_convex";
}

ThresholdReport superadditivity_threshold(double r, double s, double c_r, double c_s) {
  if (!(r > 1.0)) throw std::invalid_argument("superadditivity_threshold: requires r > 1");
  if (!(s > r)) throw std::invalid_argument("superadditivity_threshold: requires s > r");
  if (!(c_r > 0.0) || !(c_s > 0.0)) {
    throw std::invalid_argument("superadditivity_threshold: flank coefficients must be > 0");
  }
  ThresholdReport out;
  out.kind = ThresholdKind::superadditive;
  out.threshold = r * (r - 1.0) / (s * (s - 1.0)) * std::min(c_r, c_s);
  out.exponents = {r, s};
  out.coefficients = {c_r, c_s};
  return out;
}

ThresholdReport mult_convexity_threshold(double r_prime, double r, double s, double s_prime,
                                         double c_r_prime, double c_r, double c_s,
                                         double c_s_prime) {
  if (!(0.0 <= r_prime && r_prime < r && r < s && s < s_prime) || !std::isfinite(s_prime)) {
    throw std::invalid_argument(
        "mult_convexity_threshold: requires 0 <= r' < r < s < s' < inf");
  }
  if (!(c_r_prime > 0.0 && c_r > 0.0 && c_s > 0.0 && c_s_prime > 0.0)) {
    throw std::invalid_argument("mult_convexity_threshold: coefficients must be > 0");
  }
  // Extreme terms of x Psi_g: exponents r' + r and s + s'.
  const double low = c_r * c_r_prime * (r - r_prime) * (r - r_prime);
  const double high = c_s * c_s_prime * (s_prime - s) * (s_prime - s);
  const double psi_threshold = std::min(low, high) / 4.0;
  const double largest = std::max({c_r, c_s, c_r_prime, c_s_prime});
  const double width = s_prime - r_prime;

  ThresholdReport out;
  out.kind = ThresholdKind::mult_convex;
  out.psi_threshold = psi_threshold;
  out.threshold = psi_threshold / (largest * width * width);
  out.exponents = {r_prime, r, s, s_prime};
  out.coefficients = {c_r_prime, c_r, c_s, c_s_prime};
  return out;
}

double negative_block_coefficient(double base_exponent, std::size_t n_neg) {
  if (n_neg == 0) throw std::invalid_argument("negative_block_coefficient: n_neg must be >= 1");
  if (!(base_exponent >= 1.0)) {
    throw std::invalid_argument("negative_block_coefficient: base exponent must be >= 1");
  }
  const double n = static_cast<double>(n_neg);
  const double share = 1.0 / n;
  const double b = base_exponent;
  const double nu = superadditivity_threshold(b + 1.0, b + n + 2.0, share, share).threshold;
  const double lambda =
      mult_convexity_threshold(b, b + 1.0, b + n + 2.0, b + n + 3.0, share, share, share, share)
          .threshold;
  return 0.5 * std::min(nu, lambda);
}

namespace {

std::vector<PowerTerm> block_terms(double base, std::size_t n_neg, double scale) {
  const double c = negative_block_coefficient(base, n_neg);
  const double n = static_cast<double>(n_neg);
  std::vector<PowerTerm> terms;
  terms.push_back({scale, base});
  terms.push_back({scale, base + 1.0});
  for (std::size_t k = 2; k <= n_neg + 1; ++k)
    terms.push_back({-c * scale, base + static_cast<double>(k)});
  terms.push_back({scale, base + n + 2.0});
  terms.push_back({scale, base + n + 3.0});
  return terms;
}

// r_n = sum_{k=1}^{n} (k + 4).
double block_base(std::size_t n) {
  const double nd = static_cast<double>(n);
  return nd * (nd + 1.0) / 2.0 + 4.0 * nd;
}

bool block_representable(std::size_t n) {
  const double top = block_base(n) + static_cast<double>(n) + 3.0;
  const double log_factorial = std::lgamma(top + 1.0);
  const double c = negative_block_coefficient(block_base(n), n);
  return log_factorial < std::log(DBL_MAX) && std::log(c) - log_factorial > std::log(DBL_MIN);
}

}  // namespace

EntrywiseFunction build_tree_preserver_poly(std::size_t n_neg) {
  if (n_neg == 0) throw std::invalid_argument("build_tree_preserver_poly: n_neg must be >= 1");
  return EntrywiseFunction(block_terms(1.0, n_neg, 1.0));
}

std::size_t max_entire_blocks() {
  std::size_t n = 0;
  while (block_representable(n + 1)) ++n;
  return n;
}

EntrywiseFunction build_entire_function_partial(std::size_t n_blocks) {
  if (n_blocks == 0) {
    throw std::invalid_argument("build_entire_function_partial: N must be >= 1");
  }
  const std::size_t limit = max_entire_blocks();
  if (n_blocks > limit) {
    throw std::range_error("build_entire_function_partial: factorial scaling underflows for N = " +
                           std::to_string(n_blocks) + "; max supported N is " +
                           std::to_string(limit));
  }
  std::vector<PowerTerm> terms;
  for (std::size_t n = 1; n <= n_blocks; ++n) {
    const double base = block_base(n);
    const double top = base + static_cast<double>(n) + 3.0;
    const double inv_factorial = std::exp(-std::lgamma(top + 1.0));
    auto block = block_terms(base, n, inv_factorial);
    terms.insert(terms.end(), block.begin(), block.end());
  }
  return EntrywiseFunction(std::move(terms));
}

std::size_t longest_negative_run(const EntrywiseFunction& f) {
  std::size_t best = 0, run = 0;
  double expected = 0.0;
  for (const auto& t : f.terms()) {
    if (std::floor(t.exponent) != t.exponent) {
      throw std::invalid_argument("longest_negative_run: non-integer exponent");
    }
    if (t.exponent != expected) run = 0;  // skipped exponents have coefficient 0
    run = t.coefficient < 0.0 ? run + 1 : 0;
    best = std::max(best, run);
    expected = t.exponent + 1.0;
  }
  return best;
}

SymMatrix b3_matrix(double mu, double alpha, double beta) {
  return SymMatrix{{mu, alpha, beta}, {alpha, alpha, 0.0}, {beta, 0.0, beta}};
}

SymMatrix embed_b3(std::size_t n, const OpenTriangle& tri, double mu, double alpha,
                   double beta) {
  SymMatrix a(n);
  a.set(tri.center, tri.center, mu);
  a.set(tri.j, tri.j, alpha);
  a.set(tri.k, tri.k, beta);
  a.set(tri.center, tri.j, alpha);
  a.set(tri.center, tri.k, beta);
  return a;
}

double det3(const SymMatrix& a) {
  if (a.dim() != 3) throw std::invalid_argument("det3: expected a 3x3 matrix");
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

SymMatrix fractional_power_counterexample(const Graph& t, double alpha, double range_max) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument(
        "fractional_power_counterexample: requires 0 < alpha < 1 (powers alpha >= 1 "
        "preserve positivity on trees)");
  }
  if (!(range_max > 0.0)) {
    throw std::invalid_argument("fractional_power_counterexample: R must be > 0");
  }
  if (!is_forest(t)) {
    throw std::invalid_argument("fractional_power_counterexample: graph is not a tree");
  }
  const auto tri = find_open_triangle(t);
  if (!tri) {
    throw std::invalid_argument("fractional_power_counterexample: no open triangle");
  }
  const double c = range_max / 4.0;
  return embed_b3(t.order(), *tri, 2.0 * c, c, c);
}

ThresholdingCounterexample thresholding_counterexample(const Graph& g, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("thresholding_counterexample: a must be > 0");
  const auto tri = find_open_triangle(g);
  if (!tri) {
    throw std::invalid_argument(
        "thresholding_counterexample: every component is complete; thresholding "
        "preserves positivity there");
  }
  ThresholdingCounterexample out{SymMatrix::constant(g.order(), a), {}, *tri, {}, 0.0};
  out.image = apply_entrywise([](double x) { return x; }, out.matrix, g);
  const std::size_t idx[3] = {tri->center, tri->j, tri->k};
  out.block = out.image.principal(idx);
  out.block_det = det3(out.block);
  return out;
}

}  // namespace graphpos
