#include "graphpos/power_sum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

namespace graphpos {

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view s, std::string_view what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("function literal: bad " + std::string(what) + " '" +
                                std::string(s) + "'");
  }
  return v;
}

}  // namespace

EntrywiseFunction::EntrywiseFunction(std::vector<PowerTerm> terms, double domain_bound)
    : domain_bound_(domain_bound) {
  if (!(domain_bound > 0.0)) {
    throw std::invalid_argument("entrywise function: domain bound must be > 0");
  }
  for (const auto& t : terms) {
    if (!std::isfinite(t.coefficient) || !std::isfinite(t.exponent)) {
      throw std::invalid_argument("entrywise function: non-finite term");
    }
    if (t.exponent < 0.0) {
      throw std::invalid_argument("entrywise function: exponents must be >= 0");
    }
  }
  std::sort(terms.begin(), terms.end(),
            [](const PowerTerm& a, const PowerTerm& b) { return a.exponent < b.exponent; });
  for (const auto& t : terms) {
    if (!terms_.empty() && terms_.back().exponent == t.exponent) {
      terms_.back().coefficient += t.coefficient;
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const PowerTerm& t) { return t.coefficient == 0.0; });
}

double EntrywiseFunction::falling_factorial(double e, unsigned k) noexcept {
  double product = 1.0;
  for (unsigned i = 0; i < k; ++i) product *= e - static_cast<double>(i);
  return product;
}

void EntrywiseFunction::check_domain(double x) const {
  if (!in_domain(x)) {
    throw std::domain_error("entrywise function: argument " + shortest(x) +
                            " outside [0, " + shortest(domain_bound_) + ")");
  }
}

double EntrywiseFunction::eval(double x, unsigned k) const {
  check_domain(x);
  double total = 0.0;
  for (const auto& t : terms_) {
    const double factor = falling_factorial(t.exponent, k);
    if (factor == 0.0) continue;  // integer exponent below k
    const double power = t.exponent - static_cast<double>(k);
    if (x == 0.0) {
      if (power < 0.0) {
        throw std::domain_error("entrywise function: derivative of order " +
                                std::to_string(k) + " is singular at 0");
      }
      if (power == 0.0) total += t.coefficient * factor;
      continue;
    }
    total += t.coefficient * factor * std::pow(x, power);
  }
  return total;
}

std::string EntrywiseFunction::to_literal() const {
  if (terms_.empty()) return "0*x^0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += ", ";
    out += shortest(t.coefficient);
    out += "*x^";
    out += shortest(t.exponent);
  }
  return out;
}

EntrywiseFunction parse_function_literal(std::string_view text) {
  std::vector<PowerTerm> terms;
  if (trim(text).empty()) throw std::invalid_argument("function literal: empty");
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto piece = trim(text.substr(start, end - start));
    const auto star = piece.find('*');
    const auto caret = piece.find('^');
    if (star == std::string_view::npos || caret == std::string_view::npos ||
        caret < star || trim(piece.substr(star + 1, caret - star - 1)) != "x") {
      throw std::invalid_argument("function literal: expected 'coef*x^exp', got '" +
                                  std::string(piece) + "'");
    }
    const double coef = parse_number(piece.substr(0, star), "coefficient");
    const double exp = parse_number(piece.substr(caret + 1), "exponent");
    if (exp < 0.0) {
      throw std::invalid_argument("function literal: exponent must be >= 0");
    }
    terms.push_back({coef, exp});
    start = end + 1;
  }
  return EntrywiseFunction(std::move(terms));
}

}  // namespace graphpos
