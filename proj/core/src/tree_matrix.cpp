#include "graphpos/tree_matrix.hpp"

#include <algorithm>
#include <stdexcept>

#include "graphpos/rng.hpp"

namespace graphpos {

TreeMatrix to_tree_matrix(const SymMatrix& a, const Graph& forest) {
  if (forest.order() != a.dim()) {
    throw std::invalid_argument("tree matrix: graph order does not match dimension");
  }
  if (!is_forest(forest)) {
    throw std::invalid_argument("tree matrix: pattern graph is not a forest");
  }
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      if (a(i, j) != 0.0 && !forest.has_edge(i, j)) {
        throw PatternViolation("tree matrix: nonzero entry (" + std::to_string(i) +
                               ", " + std::to_string(j) + ") outside the pattern");
      }
  TreeMatrix t{forest, {}, {}};
  t.diagonal.resize(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) t.diagonal[i] = a(i, i);
  t.edge_values.reserve(forest.size());
  for (const auto& e : forest.edges()) t.edge_values.push_back(a(e.u, e.v));
  return t;
}

SymMatrix to_dense(const TreeMatrix& t) {
  SymMatrix a(t.forest.order());
  for (std::size_t i = 0; i < t.diagonal.size(); ++i) a.set(i, i, t.diagonal[i]);
  const auto& edges = t.forest.edges();
  for (std::size_t e = 0; e < edges.size(); ++e)
    a.set(edges[e].u, edges[e].v, t.edge_values[e]);
  return a;
}

std::vector<LeafStep> leaf_elimination_order(const Graph& forest) {
  const std::size_t n = forest.order();
  // A leaf's only live neighbor (and edge) is the XOR over its live ones.
  std::vector<std::size_t> degree(n), nbr_xor(n, 0), edge_xor(n, 0);
  std::vector<bool> removed(n, false);
  const auto& edges = forest.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [u, v] = edges[e];
    ++degree[u];
    ++degree[v];
    nbr_xor[u] ^= v;
    nbr_xor[v] ^= u;
    edge_xor[u] ^= e;
    edge_xor[v] ^= e;
  }

  std::vector<LeafStep> order;
  order.reserve(n);
  for (std::size_t ptr = 0; ptr < n; ++ptr) {
    if (removed[ptr]) continue;
    if (degree[ptr] == 0) {
      order.push_back({ptr, kNoParent, kNoParent});
      removed[ptr] = true;
      continue;
    }
    if (degree[ptr] != 1) continue;
    std::size_t v = ptr;
    for (;;) {
      const std::size_t u = nbr_xor[v];
      const std::size_t e = edge_xor[v];
      order.push_back({v, u, e});
      removed[v] = true;
      degree[v] = 0;
      --degree[u];
      nbr_xor[u] ^= v;
      edge_xor[u] ^= e;
      if (degree[u] == 0) {
        order.push_back({u, kNoParent, kNoParent});
        removed[u] = true;
        break;
      }
      if (degree[u] == 1 && u < ptr) {
        v = u;
        continue;
      }
      break;
    }
  }
  if (order.size() != n) {
    throw std::invalid_argument("leaf elimination: graph has a cycle");
  }
  return order;
}

TreeMatrix random_psd_tree_matrix(const Graph& forest, double range_max,
                                  std::uint64_t seed) {
  if (!(range_max > 0.0)) {
    throw std::invalid_argument("random_psd_with_pattern: range_max must be > 0");
  }
  if (!is_forest(forest)) {
    throw std::invalid_argument(
        "random_psd_with_pattern: unsupported pattern (graph is not a forest)");
  }
  auto rng = make_rng(seed);
  const std::size_t n = forest.order();
  TreeMatrix t{forest, std::vector<double>(n, 0.0),
               std::vector<double>(forest.size(), 0.0)};

  // A = sum over eliminated v of l_v l_v^T, where l_v has entries
  // L(v, v) = pivot and L(parent, v) = link. Occasional exact zeros exercise
  // singular and zero-diagonal configurations.
  for (const auto& step : leaf_elimination_order(forest)) {
    double pivot = uniform_real(rng, 0.0, 1.0);
    if (uniform_int(rng, 0, 15) == 0) pivot = 0.0;
    t.diagonal[step.vertex] += pivot * pivot;
    if (step.parent == kNoParent) continue;
    double link = uniform_real(rng, 0.0, 1.0);
    if (uniform_int(rng, 0, 15) == 0) link = 0.0;
    t.edge_values[step.edge] = pivot * link;
    t.diagonal[step.parent] += link * link;
  }

  double largest = 0.0;
  for (double d : t.diagonal) largest = std::max(largest, d);
  for (double e : t.edge_values) largest = std::max(largest, e);
  if (largest > 0.0) {
    const double target = range_max * uniform_real(rng, 0.25, 1.0 - 0x1.0p-20);
    const double scale = target / largest;
    for (double& d : t.diagonal) d *= scale;
    for (double& e : t.edge_values) e *= scale;
  }
  return t;
}

}  // namespace graphpos
