#include "graphpos/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "graphpos/rng.hpp"

namespace graphpos {

Graph::Graph(std::size_t n) : adjacency_(n) {}

Graph::Graph(std::size_t n, std::vector<Edge> edges) : adjacency_(n) {
  for (auto& e : edges) {
    if (e.u == e.v) {
      throw std::invalid_argument("graph: self-loop at vertex " +
                                  std::to_string(e.u));
    }
    if (e.u >= n || e.v >= n) {
      throw std::invalid_argument("graph: edge endpoint out of range");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end());
      dup != edges.end()) {
    throw std::invalid_argument("graph: duplicate edge (" +
                                std::to_string(dup->u) + ", " +
                                std::to_string(dup->v) + ")");
  }
  edges_ = std::move(edges);
  for (const auto& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(std::size_t i, std::size_t j) const {
  if (i >= order() || j >= order() || i == j) return false;
  const auto& nbrs = adjacency_[i];
  return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

std::optional<std::size_t> Graph::edge_index(std::size_t i,
                                             std::size_t j) const {
  if (i > j) std::swap(i, j);
  const Edge key{i, j};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

bool Graph::is_subgraph_of(const Graph& other) const {
  if (order() != other.order()) return false;
  return std::all_of(edges_.begin(), edges_.end(), [&](const Edge& e) {
    return other.has_edge(e.u, e.v);
  });
}

std::optional<GraphKind> parse_graph_kind(std::string_view name) {
  if (name == "path") return GraphKind::path;
  if (name == "star") return GraphKind::star;
  if (name == "complete") return GraphKind::complete;
  if (name == "random_tree" || name == "tree") return GraphKind::random_tree;
  return std::nullopt;
}

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::path: return "path";
    case GraphKind::star: return "star";
    case GraphKind::complete: return "complete";
    case GraphKind::random_tree: return "random_tree";
  }
  return "unknown";
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph(n, std::move(edges));
}

Graph star_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.push_back({0, i});
  return Graph(n, std::move(edges));
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j});
  return Graph(n, std::move(edges));
}

Graph random_tree(std::size_t n, std::uint64_t seed) {
  if (n <= 1) return Graph(n);
  if (n == 2) return Graph(2, {{0, 1}});

  auto rng = make_rng(seed);
  std::vector<std::size_t> code(n - 2);
  for (auto& c : code) c = static_cast<std::size_t>(uniform_int(rng, 0, n - 1));

  // Linear-time Prüfer decoding.
  std::vector<std::size_t> degree(n, 1);
  for (auto c : code) ++degree[c];

  std::vector<Edge> edges;
  edges.reserve(n - 1);
  std::size_t ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  std::size_t leaf = ptr;
  for (auto v : code) {
    edges.push_back({leaf, v});
    --degree[leaf];
    if (--degree[v] == 1 && v < ptr) {
      leaf = v;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  // The two remaining degree-1 vertices: `leaf` and n - 1.
  edges.push_back({leaf, n - 1});
  return Graph(n, std::move(edges));
}

Graph build_graph(GraphKind kind, std::size_t n,
                  std::optional<std::uint64_t> seed) {
  if (n == 0) throw std::invalid_argument("graph: vertex count must be >= 1");
  if (kind == GraphKind::random_tree && !seed) {
    throw std::invalid_argument("graph: random_tree requires a seed");
  }
  if (kind != GraphKind::random_tree && seed) {
    throw std::invalid_argument("graph: seed only applies to random_tree");
  }
  switch (kind) {
    case GraphKind::path: return path_graph(n);
    case GraphKind::star: return star_graph(n);
    case GraphKind::complete: return complete_graph(n);
    case GraphKind::random_tree: return random_tree(n, *seed);
  }
  throw std::invalid_argument("graph: unknown kind");
}

std::size_t max_degree(const Graph& g) {
  std::size_t best = 0;
  for (std::size_t v = 0; v < g.order(); ++v)
    best = std::max(best, g.degree(v));
  return best;
}

std::size_t connected_components(const Graph& g) {
  std::vector<std::size_t> parent(g.order());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = g.order();
  for (const auto& e : g.edges()) {
    auto a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

bool is_forest(const Graph& g) {
  return g.size() + connected_components(g) == g.order();
}

bool is_tree(const Graph& g) {
  return g.order() >= 1 && g.size() + 1 == g.order() &&
         connected_components(g) == 1;
}

std::optional<OpenTriangle> find_open_triangle(const Graph& g) {
  for (std::size_t c = 0; c < g.order(); ++c) {
    const auto& nbrs = g.neighbors(c);
    for (std::size_t a = 0; a < nbrs.size(); ++a)
      for (std::size_t b = a + 1; b < nbrs.size(); ++b)
        if (!g.has_edge(nbrs[a], nbrs[b])) return OpenTriangle{c, nbrs[a], nbrs[b]};
  }
  return std::nullopt;
}

Graph read_graph(std::istream& in) {
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) {
    throw std::invalid_argument("graph text: expected header \"n m\"");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long e = 0; e < m; ++e) {
    long long i = -1, j = -1;
    if (!(in >> i >> j) || i < 0 || j < 0) {
      throw std::invalid_argument("graph text: malformed edge line " +
                                  std::to_string(e + 1));
    }
    edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

Graph graph_from_spec(std::string_view spec) {
  std::istringstream in{std::string(spec)};
  std::string kind_name;
  long long n = -1;
  if (!(in >> kind_name >> n)) {
    throw std::invalid_argument("graph spec: expected \"<kind> <n> [seed]\"");
  }
  auto kind = parse_graph_kind(kind_name);
  if (!kind) throw std::invalid_argument("graph spec: unknown kind '" + kind_name + "'");
  if (n <= 0) throw std::invalid_argument("graph: vertex count must be >= 1");
  std::optional<std::uint64_t> seed;
  if (unsigned long long s = 0; in >> s) seed = s;
  if (*kind == GraphKind::random_tree && !seed) seed = 0;
  return build_graph(*kind, static_cast<std::size_t>(n), seed);
}

}  // namespace graphpos
