#pragma once

// Entrywise functions f(x) = sum_i c_i x^{e_i} on [0, R) with closed-form
// derivatives of every order.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace graphpos {

struct PowerTerm {
  double coefficient = 0.0;
  double exponent = 0.0;

  friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};

/// Finite power sum. Terms are kept with strictly increasing exponents and
/// nonzero coefficients (the constructor sorts, merges equal exponents and
/// drops zero coefficients). 0^0 evaluates to 1.
class EntrywiseFunction {
 public:
  EntrywiseFunction() = default;
  /// Throws std::invalid_argument for negative or non-finite exponents,
  /// non-finite coefficients, or a domain bound <= 0.
  explicit EntrywiseFunction(std::vector<PowerTerm> terms,
                             double domain_bound = std::numeric_limits<double>::infinity());

  static EntrywiseFunction power(double exponent, double coefficient = 1.0) {
    return EntrywiseFunction({{coefficient, exponent}});
  }
  static EntrywiseFunction identity() { return power(1.0); }

  const std::vector<PowerTerm>& terms() const noexcept { return terms_; }
  /// Upper end R of the domain [0, R).
  double domain_bound() const noexcept { return domain_bound_; }
  bool in_domain(double x) const noexcept { return x >= 0.0 && x < domain_bound_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// f^{(k)}(x). Throws std::domain_error outside [0, R) or when a term's
  /// k-th derivative is singular at x = 0.
  double eval(double x, unsigned k = 0) const;
  double operator()(double x) const { return eval(x, 0); }

  /// Value of f at x in an arbitrary real type (used for extended-precision
  /// evaluation). Same domain rules as eval(x, 0).
  template <typename Real>
  Real value_as(const Real& x) const;

  /// e (e - 1) ... (e - k + 1), accumulated as a running product.
  static double falling_factorial(double e, unsigned k) noexcept;

  /// CLI literal, e.g. "1*x^1, 1*x^2, -0.1*x^3". The zero function prints
  /// as "0*x^0".
  std::string to_literal() const;

  friend bool operator==(const EntrywiseFunction&, const EntrywiseFunction&) = default;

 private:
  void check_domain(double x) const;

  std::vector<PowerTerm> terms_;
  double domain_bound_ = std::numeric_limits<double>::infinity();
};

/// Parses the literal syntax: comma-separated "coef*x^exp" terms with
/// integer or decimal exponents >= 0. Throws std::invalid_argument.
EntrywiseFunction parse_function_literal(std::string_view text);

// ---------------------------------------------------------------------------

template <typename Real>
Real EntrywiseFunction::value_as(const Real& x) const {
  using std::pow;
  if (x < Real(0) || (std::isfinite(domain_bound_) && !(x < Real(domain_bound_)))) {
    throw std::domain_error("entrywise function: argument outside [0, R)");
  }
  Real total(0);
  for (const auto& t : terms_) {
    if (t.exponent == 0.0) {
      total += Real(t.coefficient);
    } else if (x == Real(0)) {
      continue;
    } else {
      total += Real(t.coefficient) * pow(x, Real(t.exponent));
    }
  }
  return total;
}

}  // namespace graphpos
