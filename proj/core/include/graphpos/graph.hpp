#pragma once

// Sparsity-pattern graphs: finite, undirected, simple, vertices 0..n-1.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graphpos {

struct Edge {
  std::size_t u = 0;  // u < v
  std::size_t v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable undirected simple graph. Edges are stored once with u < v and
/// kept in lexicographic order; adjacency lists are sorted ascending.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  /// Throws std::invalid_argument on self-loops, duplicate pairs or
  /// endpoints >= n. Pairs may be given in either orientation.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t order() const noexcept { return adjacency_.size(); }
  std::size_t size() const noexcept { return edges_.size(); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const {
    return adjacency_.at(v);
  }
  std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }
  bool has_edge(std::size_t i, std::size_t j) const;

  /// Index of edge {i, j} in edges(), if present.
  std::optional<std::size_t> edge_index(std::size_t i, std::size_t j) const;

  /// True iff every edge of this graph is an edge of `other` (same order).
  bool is_subgraph_of(const Graph& other) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.order() == b.order() && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

enum class GraphKind { path, star, complete, random_tree };

std::optional<GraphKind> parse_graph_kind(std::string_view name);
std::string to_string(GraphKind kind);

Graph path_graph(std::size_t n);
/// Star on n = d + 1 vertices with center 0.
Graph star_graph(std::size_t n);
Graph complete_graph(std::size_t n);
/// Uniformly random labeled tree decoded from a seeded Prüfer sequence.
Graph random_tree(std::size_t n, std::uint64_t seed);

/// Throws std::invalid_argument if n == 0, or if a seed is given/missing
/// inconsistently with the kind.
Graph build_graph(GraphKind kind, std::size_t n,
                  std::optional<std::uint64_t> seed = std::nullopt);

std::size_t max_degree(const Graph& g);
std::size_t connected_components(const Graph& g);
bool is_tree(const Graph& g);
bool is_forest(const Graph& g);

/// (center, j, k) with {center,j}, {center,k} edges and {j,k} not an edge.
struct OpenTriangle {
  std::size_t center = 0;
  std::size_t j = 0;
  std::size_t k = 0;

  friend bool operator==(const OpenTriangle&, const OpenTriangle&) = default;
};

/// Lexicographically first open triangle (center, then j < k). Absent iff
/// every connected component of g is complete.
std::optional<OpenTriangle> find_open_triangle(const Graph& g);

// Text format: "n m" followed by m lines "i j" (0-based, i < j).
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);
Graph parse_graph(const std::string& text);
std::string format_graph(const Graph& g);

/// Parses a short description such as "star 6", "path 3" or
/// "random_tree 8 42" (kind, vertex count, optional seed).
Graph graph_from_spec(std::string_view spec);

}  // namespace graphpos
