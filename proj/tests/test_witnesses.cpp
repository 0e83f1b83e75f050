#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numeric>

#include "graphpos/constructors.hpp"
#include "graphpos/reports.hpp"
#include "graphpos/rng.hpp"
#include "graphpos/witnesses.hpp"

using namespace graphpos;

namespace {

// Q_{A^{o m}}(beta) with A^{o 0} the support indicator, evaluated directly.
double q_power(const SymMatrix& a, const std::vector<double>& beta, unsigned m) {
  double q = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const double x = a(i, j);
      const double entry = x == 0.0 ? 0.0 : (m == 0 ? 1.0 : std::pow(x, static_cast<double>(m)));
      q += beta[i] * entry * beta[j];
    }
  return q;
}

double squared_norm(const std::vector<double>& v) {
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

const SymMatrix kPairTwo{{1, 1.5}, {1.5, 2}};

}  // namespace

TEST(NkMembership, Examples) {
  EXPECT_TRUE(nk_membership(kPairTwo, {1, -1}, 2));
  EXPECT_FALSE(nk_membership(kPairTwo, {1, -1}, 3));
  EXPECT_FALSE(nk_membership(kPairTwo, {1, -1}, 1));
  EXPECT_DOUBLE_EQ(q_power(kPairTwo, {1, -1}, 2), 0.5);

  const SymMatrix pair_one{{1, 1.25}, {1.25, 4}};
  EXPECT_TRUE(nk_membership(pair_one, {1, -1}, 1));
  EXPECT_DOUBLE_EQ(q_power(pair_one, {1, -1}, 1), 2.5);

  for (unsigned k = 0; k < 4; ++k) EXPECT_FALSE(nk_membership(kPairTwo, {0, 0}, k));
  EXPECT_TRUE(nk_membership(kPairTwo, {1, 0}, 0));
  EXPECT_THROW(nk_membership(kPairTwo, {1, 0, 0}, 1), std::invalid_argument);
}

TEST(NkMembership, MeasureMatchesDirectForms) {
  const auto w = measure_witness(kPairTwo, {2, -2}, 2);
  EXPECT_EQ(w.kernel_residual, 0.0);
  EXPECT_DOUBLE_EQ(w.positivity_margin, q_power(kPairTwo, {2, -2}, 2) / 8.0);
  EXPECT_EQ(measure_witness(kPairTwo, {0, 0}, 1).positivity_margin, 0.0);
}

TEST(EtaBound, Examples) {
  EXPECT_EQ(eta_bound(b3_matrix(2, 1, 1)), 2u);
  EXPECT_EQ(eta_bound(SymMatrix(4)), 0u);
  EXPECT_EQ(eta_bound(SymMatrix{{1, 2}, {2, 3}}), 3u);
}

TEST(EtaBound, NoWitnessSearch) {
  // Random beta plus beta drawn from the joint null space of A^{o 0..eta-1}.
  Rng rng = make_rng(31);
  const std::vector<SymMatrix> matrices{b3_matrix(2, 1, 1), SymMatrix{{1, 2}, {2, 3}}, kPairTwo,
                                        vandermonde_witnesses({1, 2, 3}).matrix};
  for (const SymMatrix& a : matrices) {
    const auto eta = static_cast<unsigned>(eta_bound(a));
    const auto n = static_cast<Eigen::Index>(a.dim());
    Eigen::MatrixXd stack(n * eta, n);
    for (unsigned m = 0; m < eta; ++m) {
      Eigen::MatrixXd p(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
          const double x = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
          p(i, j) = x == 0.0 ? 0.0 : (m == 0 ? 1.0 : std::pow(x, static_cast<double>(m)));
        }
      stack.block(m * n, 0, n, n) = p;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack, Eigen::ComputeFullV);
    std::vector<Eigen::VectorXd> kernel;
    for (Eigen::Index c = 0; c < n; ++c)
      if (c >= svd.singularValues().size() || svd.singularValues()(c) <= 1e-9 * svd.singularValues()(0))
        kernel.push_back(svd.matrixV().col(c));

    std::size_t found = 0;
    for (int trial = 0; trial < 100000; ++trial) {
      std::vector<double> beta(a.dim());
      if (kernel.empty() || trial % 2 == 0) {
        for (double& b : beta) b = uniform_real(rng, -1, 1);
      } else {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
        for (const auto& k : kernel) v += uniform_real(rng, -1, 1) * k;
        beta.assign(v.data(), v.data() + n);
      }
      for (unsigned k = eta; k <= eta + 1; ++k) found += nk_membership(a, beta, k) ? 1 : 0;
    }
    EXPECT_EQ(found, 0u) << format_matrix(a);
  }
}

TEST(Vandermonde, Examples) {
  const auto two = vandermonde_witnesses({1, 2});
  ASSERT_EQ(two.witnesses.size(), 1u);
  EXPECT_EQ(two.witnesses[0].k, 1u);
  EXPECT_NEAR(two.witnesses[0].beta[0], 1.0, 1e-15);
  EXPECT_NEAR(two.witnesses[0].beta[1], -1.0, 1e-15);
  EXPECT_NEAR(q_power(two.matrix, two.witnesses[0].beta, 1), 1.0, 1e-12);

  const auto three = vandermonde_witnesses({1, 2, 3});
  ASSERT_EQ(three.witnesses.size(), 2u);
  const auto& b2 = three.witnesses[1].beta;
  EXPECT_NEAR(b2[0], 1.0, 1e-12);
  EXPECT_NEAR(b2[1], -2.0, 1e-12);
  EXPECT_NEAR(b2[2], 1.0, 1e-12);
  EXPECT_NEAR(q_power(three.matrix, b2, 2), 4.0, 1e-10);
  EXPECT_TRUE(self_certifies(three));
  // alpha^(0), alpha^(1), alpha^(2) span R^3, so N_3(A) is empty.
  Rng rng = make_rng(30);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> beta{uniform_real(rng, -1, 1), uniform_real(rng, -1, 1), uniform_real(rng, -1, 1)};
    EXPECT_FALSE(nk_membership(three.matrix, beta, 3));
  }
  EXPECT_FALSE(nk_membership(three.matrix, b2, 3));

  EXPECT_THROW(vandermonde_witnesses({1, 1}), std::invalid_argument);
  EXPECT_THROW(vandermonde_witnesses({1, 0}), std::invalid_argument);
}

TEST(Vandermonde, RandomAlphasCertify) {
  Rng rng = make_rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 8));
    std::vector<double> alphas;
    while (alphas.size() < n) {
      // Positivity is certified against an absolute cutoff, so alphas are
      // kept apart and away from zero.
      const double a = uniform_real(rng, 1.0, 4.0);
      bool spaced = true;
      for (double b : alphas) spaced = spaced && std::abs(a - b) > 0.1;
      if (spaced) alphas.push_back(a);
    }
    const auto set = vandermonde_witnesses(alphas);
    ASSERT_EQ(set.witnesses.size(), n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      ASSERT_EQ(set.witnesses[k].k, k + 1);
      ASSERT_TRUE(nk_membership(set.matrix, set.witnesses[k].beta, set.witnesses[k].k))
          << "n=" << n << " k=" << k + 1;
    }
  }
}

TEST(StarWitnesses, DegreeTwo) {
  const auto set = star_witnesses(2, {5, 1, 2}, 3);
  EXPECT_EQ(set.matrix, (SymMatrix{{5, 1, 2}, {1, 0, 0}, {2, 0, 0}}));
  ASSERT_EQ(set.witnesses.size(), 2u);
  const auto& top = set.witnesses[1];
  EXPECT_EQ(top.k, 2u);
  EXPECT_NEAR(top.beta[0], 1.0, 1e-12);
  EXPECT_NEAR(top.beta[1], 1.5, 1e-12);
  EXPECT_NEAR(top.beta[2], -2.0, 1e-12);
  EXPECT_NEAR(q_power(set.matrix, top.beta, 0), 0.0, 1e-12);
  EXPECT_NEAR(q_power(set.matrix, top.beta, 1), 0.0, 1e-12);
  EXPECT_NEAR(q_power(set.matrix, top.beta, 2), 12.0, 1e-10);
  EXPECT_EQ(set.witnesses[0].k, 1u);
  EXPECT_TRUE(certifies(set.witnesses[0]));
  EXPECT_LE(set.witnesses[0].kernel_residual, 1e-10);
}

TEST(StarWitnesses, DegreeFiveAndAmbient) {
  const auto set = star_witnesses(5, {9, 1, 2, 3, 4, 5}, 6);
  ASSERT_EQ(set.witnesses.size(), 5u);
  for (unsigned k = 1; k <= 5; ++k) EXPECT_EQ(set.witnesses[k - 1].k, k);
  EXPECT_TRUE(self_certifies(set));

  const auto padded = star_witnesses(3, {7, 1, 2, 3}, 6);
  EXPECT_EQ(padded.matrix.dim(), 6u);
  EXPECT_TRUE(self_certifies(padded));
  for (const auto& w : padded.witnesses) {
    ASSERT_EQ(w.beta.size(), 6u);
    EXPECT_EQ(w.beta[4], 0.0);
    EXPECT_EQ(w.beta[5], 0.0);
  }
}

TEST(StarWitnesses, DominanceOnlyForTopOrder) {
  EXPECT_THROW(star_witnesses(3, {1, 2, 3, 4}, 4), std::domain_error);
  const auto lower = star_witnesses(3, {1, 2, 3, 4}, 4, 2);
  ASSERT_EQ(lower.witnesses.size(), 2u);
  EXPECT_TRUE(self_certifies(lower));
  EXPECT_THROW(star_witnesses(2, {5, 1, 1}, 3), std::invalid_argument);
  EXPECT_THROW(star_witnesses(2, {5, 1}, 3), std::invalid_argument);
  EXPECT_THROW(star_witnesses(2, {5, 1, 2}, 2), std::invalid_argument);
}

TEST(StarWitnesses, RandomDominantAlphas) {
  Rng rng = make_rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    std::vector<double> alphas{0.0};
    while (alphas.size() < d + 1) {
      const double a = uniform_real(rng, 0.5, 2.0);
      bool spaced = true;
      for (std::size_t i = 1; i < alphas.size(); ++i) spaced = spaced && std::abs(a - alphas[i]) > 0.1;
      if (spaced) alphas.push_back(a);
    }
    alphas[0] = *std::max_element(alphas.begin() + 1, alphas.end()) + uniform_real(rng, 0.5, 2.0);
    const auto set = star_witnesses(d, alphas, d + 1);
    ASSERT_EQ(set.witnesses.size(), d);
    ASSERT_TRUE(self_certifies(set));
  }
}

TEST(KLowerBound, Examples) {
  const auto k2 = k_lower_bound(path_graph(2));
  EXPECT_EQ(k2.lower, 2u);
  EXPECT_EQ(k2.upper, 3u);

  const auto star6 = k_lower_bound(star_graph(6));
  EXPECT_EQ(star6.lower, 5u);
  EXPECT_EQ(star6.upper, 11u);

  const auto p4 = k_lower_bound(path_graph(4));
  EXPECT_EQ(p4.lower, 2u);
  bool has_star = false;
  for (const auto& set : p4.witnesses) {
    EXPECT_TRUE(self_certifies(set)) << set.label;
    EXPECT_TRUE(set.matrix.dim() == 4u);
    if (set.label == "star_at_max_degree") {
      has_star = true;
      EXPECT_NE(set.matrix(1, 1), 0.0);  // vertex 1 is the first of degree 2
      EXPECT_TRUE(pattern_of(set.matrix).is_subgraph_of(path_graph(4)));
    }
  }
  EXPECT_TRUE(has_star);
  EXPECT_THROW(k_lower_bound(Graph(3)), std::invalid_argument);
}

TEST(KLowerBound, WitnessOrdersReachLowerBound) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = random_tree(3 + seed % 10, seed);
    const auto b = k_lower_bound(g);
    unsigned top = 0;
    for (const auto& set : b.witnesses) {
      ASSERT_TRUE(self_certifies(set));
      ASSERT_TRUE(pattern_of(set.matrix).is_subgraph_of(g));
      for (const auto& w : set.witnesses) top = std::max(top, w.k);
    }
    EXPECT_EQ(top, b.lower);
  }
}

TEST(PatternPsd, Examples) {
  EXPECT_TRUE(pattern_psd_check(SymMatrix::identity(3)));
  EXPECT_FALSE(pattern_psd_check(b3_matrix(1, 1, 1)));
  SymMatrix d(3);
  d.set(2, 2, 5);
  EXPECT_TRUE(pattern_psd_check(d));
  // A^{o 0} = J_2 is PSD.
  EXPECT_TRUE(pattern_psd_check(SymMatrix{{1, 2}, {2, 3}}));
  EXPECT_FALSE(pattern_psd_check(SymMatrix{{0, 2}, {2, 3}}));
}

TEST(PatternPsd, MatchesSpectralOracle) {
  Rng rng = make_rng(34);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (uniform_real(rng, 0, 1) < (i == j ? 0.6 : 0.15)) a.set(i, j, uniform_real(rng, -2, 2));
    SymMatrix pattern(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (a(i, j) != 0.0) pattern.set(i, j, 1.0);
    ASSERT_EQ(pattern_psd_check(a), is_psd(pattern).is_psd) << format_matrix(a);
  }
}

TEST(KernelStability, Examples) {
  const auto trivial = star_kernel_stability_detail({{2, 1, 1}, {1, 1}}, 8);
  EXPECT_TRUE(trivial.stable);
  EXPECT_EQ(trivial.kernel_dimension, 0u);
  EXPECT_NEAR(q_power(StarMatrix{{2, 1, 1}, {1, 1}}.to_sym(), {1, -1, -1}, 1), 0.0, 1e-15);
  EXPECT_NEAR(q_power(StarMatrix{{2, 1, 1}, {1, 1}}.to_sym(), {1, -1, -1}, 2), 2.0, 1e-15);

  const auto coupled = star_kernel_stability_detail({{1, 1, 1}, {1, 0}}, 8);
  EXPECT_TRUE(coupled.stable);
  EXPECT_EQ(coupled.kernel_dimension, 1u);
  EXPECT_THROW(star_kernel_stability({{1.9, 1, 1}, {1, 1}}, 8), std::domain_error);
}

TEST(KernelStability, RandomPsdStars) {
  Rng rng = make_rng(35);
  for (int trial = 0; trial < 10000; ++trial) {
    const StarMatrix s = random_psd_star(rng, static_cast<std::size_t>(uniform_int(rng, 1, 8)));
    ASSERT_TRUE(star_kernel_stability(s, 8));
  }
}

TEST(DerivativeSign, Examples) {
  const auto sq = derivative_sign_estimate(EntrywiseFunction::power(2), 1.0, 2, kPairTwo, {1, -1});
  for (double g : sq.g_values) EXPECT_NEAR(g, 1.0, 1e-12);
  EXPECT_NEAR(sq.limit_estimate, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(sq.analytic_value, 1.0);

  const auto cube = derivative_sign_estimate(EntrywiseFunction::power(3), 1.0, 2, kPairTwo, {1, -1});
  EXPECT_NEAR(cube.limit_estimate, 3.0, 3e-6);
  EXPECT_DOUBLE_EQ(cube.analytic_value, 3.0);

  // x + x^2 - 0.1 x^3 + x^4 + x^5 has f'''(0.01) < 0.
  const auto van = vandermonde_witnesses({1, 2, 3, 4});
  const auto& w3 = van.witnesses[2];
  const auto neg = derivative_sign_estimate(parse_function_literal("1*x^1, 1*x^2, -0.1*x^3, 1*x^4, 1*x^5"),
                                            0.01, 3, van.matrix, w3.beta);
  EXPECT_LT(neg.analytic_value, 0.0);
  EXPECT_LT(neg.limit_estimate, 0.0);
  EXPECT_NEAR(neg.limit_estimate, neg.analytic_value, 1e-6 * std::abs(neg.analytic_value));

  const auto built = derivative_sign_estimate(build_tree_preserver_poly(1), 0.001, 3, van.matrix, w3.beta);
  EXPECT_LT(built.limit_estimate, 0.0);
}

TEST(DerivativeSign, Errors) {
  const auto f = EntrywiseFunction::power(2);
  EXPECT_THROW(derivative_sign_estimate(f, 0.0, 2, kPairTwo, {1, -1}), std::invalid_argument);
  EXPECT_THROW(derivative_sign_estimate(f, 1.0, 1, kPairTwo, {1, -1}), std::invalid_argument);
  const EntrywiseFunction bounded({{1, 2}}, 1.5);
  EXPECT_THROW(derivative_sign_estimate(bounded, 1.0, 2, kPairTwo, {1, -1}, {1.0}), std::domain_error);
}

TEST(DerivativeSign, RandomPowerSums) {
  Rng rng = make_rng(36);
  const auto van = vandermonde_witnesses({1, 2, 3, 4, 5});
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PowerTerm> terms;
    const auto count = uniform_int(rng, 1, 4);
    for (int i = 0; i < count; ++i)
      terms.push_back({uniform_real(rng, -2, 2), static_cast<double>(uniform_int(rng, 0, 8))});
    const EntrywiseFunction f(terms);
    const auto k = static_cast<unsigned>(uniform_int(rng, 1, 4));
    const double a = uniform_real(rng, 0.5, 2.0);
    // With f^{(k)}(a) = 0 there is no scale for a relative comparison.
    if (f.is_zero() || f.terms().back().exponent < k) continue;
    const auto est = derivative_sign_estimate(f, a, k, van.matrix, van.witnesses[k - 1].beta);
    const double scale = std::max(std::abs(est.analytic_value),
                                  1e-6 * q_power(van.matrix, van.witnesses[k - 1].beta, k));
    ASSERT_NEAR(est.limit_estimate, est.analytic_value, 1e-6 * scale) << f.to_literal() << " k=" << k;
  }
}

TEST(WitnessJson, Layout) {
  const auto set = vandermonde_witnesses({1, 2});
  const auto j = to_json(set);
  std::vector<std::string> keys;
  for (const auto& [key, value] : j.items()) keys.push_back(key);
  EXPECT_EQ(keys, (std::vector<std::string>{"label", "matrix", "witnesses"}));
  EXPECT_EQ(j["matrix"].get<std::string>(), format_matrix(set.matrix));
  const auto& w = j["witnesses"][0];
  EXPECT_EQ(w["k"].get<unsigned>(), 1u);
  EXPECT_EQ(w["beta"].size(), 2u);
  EXPECT_TRUE(w.contains("kernel_residual"));
  EXPECT_TRUE(w.contains("positivity_margin"));
  EXPECT_NEAR(w["positivity_margin"].get<double>() * squared_norm(set.witnesses[0].beta), 1.0, 1e-12);
}
