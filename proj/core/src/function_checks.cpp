#include "graphpos/function_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace graphpos {

namespace {

// Number of grid intervals in [0, B]; grid point i is i * step.
std::size_t grid_count(const Grid& grid) {
  if (!(grid.step > 0.0) || !(grid.bound > 0.0) || !std::isfinite(grid.bound)) {
    throw std::invalid_argument("grid: step and bound must be positive and finite");
  }
  const double ratio = grid.bound / grid.step;
  if (ratio > 1e7) throw std::invalid_argument("grid: too many points");
  return static_cast<std::size_t>(std::floor(ratio * (1.0 + 1e-12)));
}

// f at grid points 0..count whose value lies in the domain; NaN elsewhere.
std::vector<double> tabulate(const EntrywiseFunction& f, double step, std::size_t count) {
  std::vector<double> values(count + 1, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i <= count; ++i) {
    const double x = static_cast<double>(i) * step;
    if (f.in_domain(x)) values[i] = f(x);
  }
  return values;
}

double binomial(unsigned n, unsigned k) {
  double c = 1.0;
  for (unsigned i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / i;
  return std::round(c);
}

void record(Verdict& v, bool violated, double slack_value, std::vector<double> point) {
  v.margin = std::min(v.margin, slack_value);
  if (violated && v.holds) {
    v.holds = false;
    v.witness = std::move(point);
  }
}

Verdict midpoint_scan(const EntrywiseFunction& f, const Grid& grid) {
  const std::size_t count = grid_count(grid);
  const auto values = tabulate(f, grid.step, count);
  Verdict v;
  v.margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= count; ++i) {
    if (std::isnan(values[i])) break;
    for (std::size_t j = i; j <= count; ++j) {
      if (std::isnan(values[j])) break;
      const double x = static_cast<double>(i) * grid.step;
      const double y = static_cast<double>(j) * grid.step;
      const double mid = f(std::sqrt(x * y));
      const double lhs = mid * mid;
      const double rhs = values[i] * values[j];
      record(v, lhs > rhs + kInequalitySlack * std::abs(rhs), rhs - lhs, {x, y});
    }
  }
  return v;
}

}  // namespace

Verdict check_superadditive(const EntrywiseFunction& f, Grid grid) {
  const std::size_t count = grid_count(grid);
  if (count < 2) throw std::invalid_argument("check_superadditive: empty grid");
  const auto values = tabulate(f, grid.step, count);
  Verdict v;
  v.margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; 2 * i <= count; ++i) {
    for (std::size_t j = i; i + j <= count; ++j) {
      const double sum_value = values[i + j];
      if (std::isnan(sum_value)) break;
      const double diff = sum_value - values[i] - values[j];
      const bool violated = diff < -kInequalitySlack * (1.0 + std::abs(sum_value));
      record(v, violated, diff,
             {static_cast<double>(i) * grid.step, static_cast<double>(j) * grid.step});
    }
  }
  return v;
}

Verdict check_mult_midpoint_convex(const EntrywiseFunction& f, Grid grid) {
  if (grid_count(grid) < 1) {
    throw std::invalid_argument("check_mult_midpoint_convex: empty grid");
  }
  return midpoint_scan(f, grid);
}

Verdict check_vasudeva_2x2(const EntrywiseFunction& f, Grid grid) {
  const std::size_t count = grid_count(grid);
  if (count < 1) throw std::invalid_argument("check_vasudeva_2x2: empty grid");
  const auto values = tabulate(f, grid.step, count);
  Verdict v;
  v.margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= count && !std::isnan(values[i]); ++i) {
    const double x = static_cast<double>(i) * grid.step;
    // |f(x)| <= f(x): nonnegativity.
    record(v, values[i] < 0.0, values[i], {x, x});
    if (i + 1 <= count && !std::isnan(values[i + 1])) {
      const double gap = values[i + 1] - std::abs(values[i]);
      record(v, gap < -kInequalitySlack * std::abs(values[i]), gap,
             {x, static_cast<double>(i + 1) * grid.step});
    }
  }
  const Verdict mid = midpoint_scan(f, grid);
  v.margin = std::min(v.margin, mid.margin);
  if (v.holds && !mid.holds) {
    v.holds = false;
    v.witness = mid.witness;
  }
  return v;
}

double psi(const EntrywiseFunction& f, double x) {
  if (!(x > 0.0)) throw std::domain_error("psi: requires x > 0");
  if (!f.in_domain(x)) throw std::domain_error("psi: argument outside the domain");
  const auto& t = f.terms();
  double total = 0.0;
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a + 1; b < t.size(); ++b) {
      const double gap = t[a].exponent - t[b].exponent;
      total += t[a].coefficient * t[b].coefficient * gap * gap *
               std::pow(x, t[a].exponent + t[b].exponent - 1.0);
    }
  return total;
}

double psi_direct(const EntrywiseFunction& f, double x) {
  if (!(x > 0.0)) throw std::domain_error("psi: requires x > 0");
  const double f0 = f.eval(x, 0), f1 = f.eval(x, 1), f2 = f.eval(x, 2);
  return x * (f2 * f0 - f1 * f1) + f0 * f1;
}

Verdict check_psi_nonnegative(const EntrywiseFunction& f, Grid grid) {
  const std::size_t count = grid_count(grid);
  if (count < 1) throw std::invalid_argument("check_psi_nonnegative: empty grid");
  const auto& t = f.terms();
  Verdict v;
  v.margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= count; ++i) {
    const double x = static_cast<double>(i) * grid.step;
    if (!f.in_domain(x)) break;
    double scale = 0.0;
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = a + 1; b < t.size(); ++b) {
        const double gap = t[a].exponent - t[b].exponent;
        scale += std::abs(t[a].coefficient * t[b].coefficient) * gap * gap *
                 std::pow(x, t[a].exponent + t[b].exponent - 1.0);
      }
    const double value = psi(f, x);
    record(v, value < -kInequalitySlack * scale, value, {x});
  }
  return v;
}

double forward_difference(const EntrywiseFunction& f, double x, double h, unsigned n) {
  if (!(h > 0.0)) throw std::invalid_argument("forward_difference: step must be > 0");
  const double last = x + static_cast<double>(n) * h;
  if (!f.in_domain(x) || !f.in_domain(last)) {
    throw std::domain_error("forward_difference: x + n h leaves the domain");
  }
  double total = 0.0;
  for (unsigned i = 0; i <= n; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    total += sign * binomial(n, i) * f(x + static_cast<double>(n - i) * h);
  }
  return total;
}

Verdict check_abs_monotonic(const EntrywiseFunction& f, const AbsMonotonicOptions& options) {
  const Grid& grid = options.grid;
  const std::size_t count = grid_count(grid);
  Verdict v;
  v.margin = std::numeric_limits<double>::infinity();
  for (unsigned n = 0; n <= options.max_order; ++n) {
    for (std::size_t i = 0; i <= count; ++i) {
      const double x = static_cast<double>(i) * grid.step;
      if (!f.in_domain(x)) break;
      const unsigned refinements = n == 0 ? 0 : options.step_refinements;
      for (unsigned j = 0; j <= refinements; ++j) {
        const double h = std::ldexp(grid.step, -static_cast<int>(j));
        const double last = x + static_cast<double>(n) * h;
        if (last > grid.bound * (1.0 + 1e-12) || !f.in_domain(last)) continue;
        double scale = 0.0;
        for (unsigned k = 0; k <= n; ++k)
          scale += binomial(n, k) * std::abs(f(x + static_cast<double>(n - k) * h));
        const double diff = forward_difference(f, x, h, n);
        v.margin = std::min(v.margin, diff);
        if (diff < -kInequalitySlack * scale) {
          v.holds = false;
          v.margin = diff;
          v.witness = std::vector<double>{static_cast<double>(n), x, h};
          return v;
        }
      }
    }
  }
  return v;
}

}  // namespace graphpos
