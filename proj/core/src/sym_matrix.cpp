#include "graphpos/sym_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "graphpos/tree_matrix.hpp"

namespace graphpos {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void require_finite(double v) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("SymMatrix: non-finite entry");
  }
}

bool is_integer(double x) { return std::floor(x) == x; }

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

SymMatrix::SymMatrix(std::size_t n) : m_(Eigen::MatrixXd::Zero(idx(n), idx(n))) {}

SymMatrix::SymMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw std::invalid_argument("SymMatrix: matrix is not square");
  }
  for (Eigen::Index i = 0; i < m_.rows(); ++i)
    for (Eigen::Index j = 0; j < m_.cols(); ++j) {
      require_finite(m_(i, j));
      if (m_(i, j) != m_(j, i)) {
        throw std::invalid_argument("SymMatrix: matrix is not symmetric");
      }
    }
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = rows.size();
  Eigen::MatrixXd m(idx(n), idx(n));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (row.size() != n) throw std::invalid_argument("SymMatrix: ragged rows");
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  *this = SymMatrix(std::move(m));
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix out(n);
  out.m_.setIdentity();
  return out;
}

SymMatrix SymMatrix::constant(std::size_t n, double value) {
  require_finite(value);
  SymMatrix out(n);
  out.m_.setConstant(value);
  return out;
}

void SymMatrix::set(std::size_t i, std::size_t j, double value) {
  require_finite(value);
  if (i >= dim() || j >= dim()) throw std::out_of_range("SymMatrix::set");
  m_(idx(i), idx(j)) = value;
  m_(idx(j), idx(i)) = value;
}

double SymMatrix::max_abs() const {
  return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff();
}

SymMatrix SymMatrix::principal(std::span<const std::size_t> indices) const {
  SymMatrix out(indices.size());
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = a; b < indices.size(); ++b)
      out.set(a, b, (*this)(indices[a], indices[b]));
  return out;
}

Graph pattern_of(const SymMatrix& a) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      if (a(i, j) != 0.0) edges.push_back({i, j});
  return Graph(a.dim(), std::move(edges));
}

SymMatrix hadamard_power(const SymMatrix& a, double exponent) {
  if (!(exponent >= 0.0) || !std::isfinite(exponent)) {
    throw std::domain_error("hadamard_power: exponent must be finite and >= 0");
  }
  const bool integral = is_integer(exponent);
  SymMatrix out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j) {
      const double x = a(i, j);
      double v;
      if (exponent == 0.0) {
        v = x != 0.0 ? 1.0 : 0.0;
      } else if (x < 0.0 && !integral) {
        throw std::domain_error(
            "hadamard_power: negative entry with non-integer exponent");
      } else {
        v = std::pow(x, exponent);
      }
      out.set(i, j, v);
    }
  return out;
}

double quadratic_form(const SymMatrix& a, std::span<const double> beta) {
  if (beta.size() != a.dim()) {
    throw std::invalid_argument("quadratic_form: vector length " +
                                std::to_string(beta.size()) +
                                " does not match dimension " +
                                std::to_string(a.dim()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (beta[i] == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) row += a(i, j) * beta[j];
    total += beta[i] * row;
  }
  return total;
}

std::vector<double> eigenvalues(const SymMatrix& a) {
  if (a.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.dense(),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalues: symmetric eigensolver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

PsdVerdict is_psd(const SymMatrix& a, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("is_psd: tolerance must be > 0");
  PsdVerdict v;
  v.tolerance_used = tol;
  if (a.dim() == 0) {
    v.is_psd = true;
    return v;
  }
  const auto ev = eigenvalues(a);
  v.min_eigenvalue = ev.front();
  v.max_eigenvalue = ev.back();
  v.spectral_radius = std::max(std::abs(ev.front()), std::abs(ev.back()));
  v.is_psd = v.min_eigenvalue >= -tol * std::max(1.0, v.spectral_radius);
  return v;
}

SymMatrix random_psd_with_pattern(const Graph& g, double range_max,
                                  std::uint64_t seed) {
  return to_dense(random_psd_tree_matrix(g, range_max, seed));
}

SymMatrix read_matrix(std::istream& in) {
  long long n = -1;
  if (!(in >> n) || n < 0) {
    throw std::invalid_argument("matrix text: expected dimension on first line");
  }
  SymMatrix out(static_cast<std::size_t>(n));
  std::string line;
  std::getline(in, line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    long long i = -1, j = -1;
    double value = 0.0;
    if (!(fields >> i >> j >> value) || i < 0 || j < 0 || i >= n || j >= n) {
      throw std::invalid_argument("matrix text: malformed entry on line " +
                                  std::to_string(line_no));
    }
    if (i > j) {
      throw std::invalid_argument("matrix text: entry below the diagonal on line " +
                                  std::to_string(line_no));
    }
    out.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), value);
  }
  return out;
}

void write_matrix(std::ostream& out, const SymMatrix& a) {
  out << a.dim() << '\n';
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j)
      if (a(i, j) != 0.0) out << i << ' ' << j << ' ' << format_double(a(i, j)) << '\n';
}

SymMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

std::string format_matrix(const SymMatrix& a) {
  std::ostringstream out;
  write_matrix(out, a);
  return out.str();
}

}  // namespace graphpos
