#pragma once

// Grid-based falsification tests for the function classes relevant to
// positivity preservation on trees: superadditivity, multiplicative midpoint
// convexity, the 2x2 (rank-1 plus monotone) conditions and absolute
// monotonicity via forward differences. "holds" always means "no violation
// found at this resolution".

#include <cstddef>
#include <optional>
#include <vector>

#include "graphpos/power_sum.hpp"

namespace graphpos {

struct Verdict {
  bool holds = true;
  /// Violating inputs: (x, y) for two-point checks, (n, x, h) for forward
  /// differences, (x, y) with x < y for monotonicity.
  std::optional<std::vector<double>> witness;
  /// Smallest observed value of (rhs - lhs) over the grid, i.e. negative iff
  /// some point violated the inequality before slack.
  double margin = 0.0;
};

struct Grid {
  double step = 1.0 / 64.0;
  double bound = 8.0;
};

inline constexpr double kInequalitySlack = 1e-12;

/// f(x + y) >= f(x) + f(y) for grid points x <= y in {h, 2h, ...} with
/// x + y <= B (and x + y < R). Throws std::invalid_argument on an empty grid.
Verdict check_superadditive(const EntrywiseFunction& f, Grid grid = {});

/// f(sqrt(xy))^2 <= f(x) f(y) for grid points x <= y in {0, h, ..., B}.
Verdict check_mult_midpoint_convex(const EntrywiseFunction& f, Grid grid = {});

/// Both 2x2 preservation conditions on [0, B]: the midpoint inequality and
/// |f(x)| <= f(y) for x <= y (nonnegative and nondecreasing).
Verdict check_vasudeva_2x2(const EntrywiseFunction& f, Grid grid = {});

/// Psi_f(x) = x (f'' f - f'^2) + f f' through the pair expansion
/// sum_{t < t'} c_t c_t' (t - t')^2 x^{t + t' - 1}. Requires x > 0.
double psi(const EntrywiseFunction& f, double x);

/// Psi_f from its definition, via eval(x, 0..2).
double psi_direct(const EntrywiseFunction& f, double x);

/// Psi_f >= -slack * scale on the grid {h, 2h, ..., B}.
Verdict check_psi_nonnegative(const EntrywiseFunction& f, Grid grid = {});

/// sum_{i=0}^{n} (-1)^i C(n, i) f(x + (n - i) h). Throws std::domain_error if
/// x + n h leaves the domain.
double forward_difference(const EntrywiseFunction& f, double x, double h, unsigned n);

struct AbsMonotonicOptions {
  unsigned max_order = 8;
  Grid grid{};
  /// Steps tried at each x: grid.step * 2^-j for j = 0..step_refinements.
  unsigned step_refinements = 30;
};

/// Delta^n_h f(x) >= -slack * sum_i C(n, i) |f(x + (n - i) h)| for
/// n = 0..max_order, x in {0, h0, ..., B}, and every refined step h. The
/// first violation in (n, x ascending, h descending) order is the witness.
Verdict check_abs_monotonic(const EntrywiseFunction& f, const AbsMonotonicOptions& options = {});

}  // namespace graphpos
