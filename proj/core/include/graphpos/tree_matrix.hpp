#pragma once

// O(n) storage for symmetric matrices whose pattern is contained in a forest.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "graphpos/graph.hpp"
#include "graphpos/sym_matrix.hpp"

namespace graphpos {

/// Raised when a matrix has a nonzero entry outside the pattern graph.
class PatternViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TreeMatrix {
  Graph forest;
  std::vector<double> diagonal;
  std::vector<double> edge_values;  // parallel to forest.edges()
};

/// Throws PatternViolation if pattern_of(a) is not contained in `forest`,
/// std::invalid_argument if `forest` has a cycle or the wrong order.
TreeMatrix to_tree_matrix(const SymMatrix& a, const Graph& forest);
SymMatrix to_dense(const TreeMatrix& t);

inline constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

struct LeafStep {
  std::size_t vertex = 0;
  std::size_t parent = kNoParent;  // kNoParent: last vertex of its component
  std::size_t edge = kNoParent;    // index into forest.edges()
};

/// Leaf-first elimination order: repeatedly removes the smallest current
/// leaf; a vertex left isolated is emitted with no parent. Linear time.
std::vector<LeafStep> leaf_elimination_order(const Graph& forest);

/// Structured sampler behind random_psd_with_pattern.
TreeMatrix random_psd_tree_matrix(const Graph& forest, double range_max,
                                  std::uint64_t seed);

}  // namespace graphpos
