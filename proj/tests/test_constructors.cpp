#include <gtest/gtest.h>

#include <cmath>
#include <iostream>

#include "graphpos/constructors.hpp"
#include "graphpos/function_checks.hpp"
#include "graphpos/reports.hpp"
#include "graphpos/rng.hpp"
#include "graphpos/star_tree.hpp"

using namespace graphpos;

namespace {

std::size_t negative_count(const EntrywiseFunction& f) {
  std::size_t n = 0;
  for (const auto& t : f.terms()) n += t.coefficient < 0.0 ? 1 : 0;
  return n;
}

bool coefficients_in_unit_interval(const EntrywiseFunction& f) {
  for (const auto& t : f.terms())
    if (std::abs(t.coefficient) > 1.0) return false;
  return true;
}

bool nondecreasing_on_grid(const EntrywiseFunction& f, Grid grid) {
  double previous = f(0.0);
  if (previous < 0.0) return false;
  for (std::size_t i = 1; static_cast<double>(i) * grid.step <= grid.bound; ++i) {
    const double value = f(static_cast<double>(i) * grid.step);
    if (value < previous) return false;
    previous = value;
  }
  return true;
}

}  // namespace

TEST(SuperadditivityThreshold, Examples) {
  EXPECT_DOUBLE_EQ(superadditivity_threshold(2, 4, 1, 1).threshold, 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(superadditivity_threshold(2, 3, 1, 1).threshold, 1.0 / 3.0);
  const auto small = superadditivity_threshold(1.0001, 2, 3, 0.5);
  EXPECT_NEAR(small.threshold, 1.0001 * 0.0001 / 2.0 * 0.5, 1e-15);
  EXPECT_LT(small.threshold, 0.00005 * 0.5 * 1.001);
  EXPECT_EQ(small.kind, ThresholdKind::superadditive);
  EXPECT_EQ(small.exponents, (std::vector<double>{1.0001, 2}));
}

TEST(SuperadditivityThreshold, Errors) {
  EXPECT_THROW(superadditivity_threshold(1, 3, 1, 1), std::invalid_argument);
  EXPECT_THROW(superadditivity_threshold(3, 2, 1, 1), std::invalid_argument);
  EXPECT_THROW(superadditivity_threshold(2, 3, 0, 1), std::invalid_argument);
}

TEST(SuperadditivityThreshold, GridCheckBelowThreshold) {
  // r = 2, s = 4: c_beta = -0.1 > -1/6.
  const EntrywiseFunction f({{1, 2}, {-0.1, 3}, {1, 4}});
  EXPECT_TRUE(check_superadditive(f).holds);
  EXPECT_TRUE(nondecreasing_on_grid(f, {}));
}

TEST(MultConvexityThreshold, Examples) {
  const auto rep = mult_convexity_threshold(1, 2, 4, 5, 1, 1, 1, 1);
  EXPECT_GT(rep.threshold, 0.0);
  EXPECT_DOUBLE_EQ(rep.psi_threshold, 0.25);
  EXPECT_DOUBLE_EQ(rep.threshold, 0.25 / 16.0);
  EXPECT_EQ(rep.kind, ThresholdKind::mult_convex);

  const EntrywiseFunction g({{1, 1}, {1, 2}, {-0.1, 3}, {1, 4}, {1, 5}});
  EXPECT_TRUE(check_psi_nonnegative(g).holds);
  const EntrywiseFunction within({{1, 1}, {1, 2}, {-0.99 * rep.threshold, 3}, {1, 4}, {1, 5}});
  EXPECT_TRUE(check_psi_nonnegative(within).holds);

  EXPECT_GT(mult_convexity_threshold(0, 1, 2, 3, 1, 1, 1, 1).threshold, 0.0);

  const EntrywiseFunction nonneg({{1, 1}, {1, 2}, {1, 4}, {1, 5}});
  EXPECT_TRUE(check_psi_nonnegative(nonneg).holds);
  EXPECT_TRUE(check_mult_midpoint_convex(nonneg).holds);
}

TEST(MultConvexityThreshold, Errors) {
  EXPECT_THROW(mult_convexity_threshold(2, 1, 4, 5, 1, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(mult_convexity_threshold(-1, 1, 4, 5, 1, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(mult_convexity_threshold(0, 1, 4, 5, 1, 0, 1, 1), std::invalid_argument);
}

TEST(ThresholdContract, RandomSuperadditivePassAndDirectedSearch) {
  Rng rng = make_rng(21);
  std::size_t found_at_ten = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double r = uniform_real(rng, 1.1, 3.0);
    const double s = r + uniform_real(rng, 0.5, 3.0);
    const double beta = uniform_real(rng, r, s);
    const double c_r = uniform_real(rng, 0.5, 2.0);
    const double c_s = uniform_real(rng, 0.5, 2.0);
    const double nu = superadditivity_threshold(r, s, c_r, c_s).threshold;
    const EntrywiseFunction f({{c_r, r}, {-0.99 * nu, beta}, {c_s, s}});
    const Grid grid{1.0 / 32.0, 4.0};
    ASSERT_TRUE(check_superadditive(f, grid).holds) << f.to_literal();
    ASSERT_TRUE(nondecreasing_on_grid(f, grid)) << f.to_literal();

    const EntrywiseFunction g({{c_r, r}, {-10.0 * nu, beta}, {c_s, s}});
    found_at_ten += check_superadditive(g, grid).holds ? 0 : 1;
  }
  // The threshold is sufficient, not necessary; the fail direction is reported only.
  std::cout << "c_beta = -10 nu': superadditivity violation found for " << found_at_ten
            << " of 100 draws\n";
}

TEST(ThresholdContract, RandomMultConvexPass) {
  Rng rng = make_rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const double rp = uniform_real(rng, 0.0, 1.0);
    const double r = rp + uniform_real(rng, 0.5, 1.5);
    const double s = r + uniform_real(rng, 0.5, 2.0);
    const double sp = s + uniform_real(rng, 0.5, 1.5);
    const double beta = uniform_real(rng, r, s);
    std::vector<double> c(4);
    for (double& v : c) v = uniform_real(rng, 0.5, 2.0);
    const double lambda = mult_convexity_threshold(rp, r, s, sp, c[0], c[1], c[2], c[3]).threshold;
    const EntrywiseFunction g({{c[0], rp}, {c[1], r}, {-0.99 * lambda, beta}, {c[2], s}, {c[3], sp}});
    ASSERT_TRUE(check_psi_nonnegative(g, {1.0 / 32.0, 4.0}).holds) << g.to_literal();
  }
}

TEST(TreePreserverPoly, NegOne) {
  const auto f = build_tree_preserver_poly(1);
  ASSERT_EQ(f.terms().size(), 5u);
  EXPECT_EQ(f.terms()[2].exponent, 3.0);
  EXPECT_LT(f.terms()[2].coefficient, 0.0);
  EXPECT_EQ(f.to_literal(), "1*x^1, 1*x^2, -0.0078125*x^3, 1*x^4, 1*x^5");
  EXPECT_EQ(f(0.0), 0.0);
  // The literal with -0.1 passes the same grid checks.
  const auto literal = parse_function_literal("1*x^1, 1*x^2, -0.1*x^3, 1*x^4, 1*x^5");
  EXPECT_TRUE(check_superadditive(literal).holds);
  EXPECT_TRUE(check_mult_midpoint_convex(literal).holds);
  const auto am = check_abs_monotonic(literal, {.max_order = 3});
  EXPECT_FALSE(am.holds);
  EXPECT_EQ(am.witness->at(0), 3.0);
}

TEST(TreePreserverPoly, NegTwoLayout) {
  const auto f = build_tree_preserver_poly(2);
  std::vector<double> exps;
  for (const auto& t : f.terms()) exps.push_back(t.exponent);
  EXPECT_EQ(exps, (std::vector<double>{1, 2, 3, 4, 5, 6}));
  EXPECT_LT(f.terms()[2].coefficient, 0.0);
  EXPECT_LT(f.terms()[3].coefficient, 0.0);
  EXPECT_EQ(f.terms()[2].coefficient, -negative_block_coefficient(1, 2));
}

TEST(TreePreserverPoly, Properties) {
  for (std::size_t n = 1; n <= 3; ++n) {
    SCOPED_TRACE(n);
    const auto f = build_tree_preserver_poly(n);
    EXPECT_EQ(negative_count(f), n);
    EXPECT_EQ(longest_negative_run(f), n);
    EXPECT_TRUE(coefficients_in_unit_interval(f));
    EXPECT_EQ(f(0.0), 0.0);
    const auto& t = f.terms();
    EXPECT_GT(t[0].coefficient, 0.0);
    EXPECT_GT(t[1].coefficient, 0.0);
    EXPECT_GT(t[t.size() - 2].coefficient, 0.0);
    EXPECT_GT(t.back().coefficient, 0.0);
    EXPECT_TRUE(check_superadditive(f).holds);
    EXPECT_TRUE(check_mult_midpoint_convex(f).holds);
    EXPECT_TRUE(check_psi_nonnegative(f).holds);
    const auto am = check_abs_monotonic(f);
    EXPECT_FALSE(am.holds);
  }
  EXPECT_THROW(build_tree_preserver_poly(0), std::invalid_argument);
}

TEST(TreePreserverPoly, PassesRandomTreeSuite) {
  RunOptions opts;
  opts.trials = 10000;
  opts.jobs = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto report = cmd_preserver_test(build_tree_preserver_poly(n), {}, opts);
    EXPECT_TRUE(report.pass) << report.details.dump();
    EXPECT_EQ(report.details["trials"]["failures"].get<std::size_t>(), 0u);
  }
}

TEST(EntireFunction, Partials) {
  const std::size_t limit = max_entire_blocks();
  ASSERT_GE(limit, 4u);
  for (std::size_t n : {1u, 3u, 4u}) {
    SCOPED_TRACE(n);
    const auto f = build_entire_function_partial(n);
    EXPECT_GE(longest_negative_run(f), n);
    EXPECT_TRUE(coefficients_in_unit_interval(f));
    EXPECT_EQ(f(0.0), 0.0);
    EXPECT_TRUE(check_superadditive(f).holds);
    EXPECT_TRUE(check_mult_midpoint_convex(f).holds);
  }
  // Block n has degree r_n + n + 3 with r_n = n (n + 1) / 2 + 4 n.
  EXPECT_EQ(build_entire_function_partial(1).terms().back().exponent, 5.0 + 4.0);
  EXPECT_EQ(build_entire_function_partial(3).terms().back().exponent, 18.0 + 6.0);
  EXPECT_THROW(build_entire_function_partial(limit + 1), std::range_error);
  EXPECT_THROW(build_entire_function_partial(0), std::invalid_argument);
}

TEST(LongestNegativeRun, Examples) {
  EXPECT_EQ(longest_negative_run(parse_function_literal("1*x^0, -1*x^1, -1*x^2, 1*x^3")), 2u);
  // A gap in the exponents is a zero coefficient and breaks the run.
  EXPECT_EQ(longest_negative_run(parse_function_literal("-1*x^1, -1*x^3")), 1u);
  EXPECT_EQ(longest_negative_run(parse_function_literal("1*x^2")), 0u);
  EXPECT_THROW(longest_negative_run(parse_function_literal("-1*x^0.5")), std::invalid_argument);
}

TEST(FractionalCounterexample, Examples) {
  const SymMatrix a = fractional_power_counterexample(path_graph(3), 0.5, 4.0);
  // The first open triangle of path(3) has center 1.
  EXPECT_EQ(a, embed_b3(3, {1, 0, 2}, 2, 1, 1));
  EXPECT_TRUE(tree_psd_check(a, path_graph(3), 0.0));
  const SymMatrix p = hadamard_power(a, 0.5);
  EXPECT_DOUBLE_EQ(p(1, 1), std::sqrt(2.0));
  EXPECT_FALSE(tree_psd_check(p, path_graph(3)));

  EXPECT_FALSE(tree_psd_check(hadamard_power(fractional_power_counterexample(path_graph(3), 0.99, 4.0), 0.99),
                              path_graph(3)));
  EXPECT_THROW(fractional_power_counterexample(path_graph(3), 1.0, 4.0), std::invalid_argument);
  EXPECT_THROW(fractional_power_counterexample(path_graph(2), 0.5, 4.0), std::invalid_argument);
}

TEST(FractionalCounterexample, RandomTrees) {
  Rng rng = make_rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 3, 20));
    const Graph t = random_tree(n, rng());
    const double alpha = uniform_real(rng, 0.05, 0.95);
    const double range = uniform_real(rng, 0.5, 10.0);
    const SymMatrix a = fractional_power_counterexample(t, alpha, range);
    ASSERT_LT(a.max_abs(), range);
    ASSERT_TRUE(tree_psd_check(a, t));
    ASSERT_FALSE(tree_psd_check(hadamard_power(a, alpha), t));
  }
}

TEST(ThresholdingCounterexample, Examples) {
  const auto p3 = thresholding_counterexample(path_graph(3), 1.0);
  EXPECT_NEAR(p3.block_det, -1.0, 1e-12);
  EXPECT_TRUE(is_psd(p3.matrix).is_psd);
  EXPECT_FALSE(is_psd(p3.image).is_psd);
  EXPECT_EQ(p3.block, b3_matrix(1, 1, 1));

  EXPECT_NEAR(thresholding_counterexample(star_graph(4), 2.0).block_det, -8.0, 1e-12);
  EXPECT_THROW(thresholding_counterexample(complete_graph(3), 1.0), std::invalid_argument);
  EXPECT_THROW(thresholding_counterexample(path_graph(3), 0.0), std::invalid_argument);
}

TEST(B3, Determinant) {
  // det B(mu, a, b) = a b (mu - a - b).
  EXPECT_DOUBLE_EQ(det3(b3_matrix(2, 1, 1)), 0.0);
  EXPECT_DOUBLE_EQ(det3(b3_matrix(5, 1, 2)), 4.0);
  EXPECT_THROW(det3(SymMatrix::identity(2)), std::invalid_argument);
  const SymMatrix e = embed_b3(5, {2, 0, 4}, 3, 1, 2);
  EXPECT_EQ(e(2, 2), 3.0);
  EXPECT_EQ(e(0, 2), 1.0);
  EXPECT_EQ(e(2, 4), 2.0);
  EXPECT_EQ(e(0, 4), 0.0);
}
