#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pref {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Counts of input defects that were silently repaired while building a Graph.
struct BuildStats {
  std::size_t self_loops = 0;
  std::size_t duplicate_edges = 0;
};

/// Immutable undirected simple graph over dense ids [0, n), stored as CSR.
///
/// Neighbor lists are sorted ascending. Self-loops and parallel edges in the
/// input are dropped; the counts are available through build_stats().
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_nodes() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  /// Index of v's first adjacency slot; slot first_slot(v) + i holds
  /// neighbors(v)[i]. Slots number the 2m directed edges.
  std::size_t first_slot(NodeId v) const { return offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  /// Every undirected edge once, with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  const BuildStats& build_stats() const { return stats_; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  BuildStats stats_;
};

/// Builds a path 0-1-...-(n-1).
Graph make_path(std::size_t n);
/// Builds a star with center 0 and leaves 1..leaves.
Graph make_star(std::size_t leaves);
/// Builds a rows x cols grid, node id = r * cols + c.
Graph make_grid(std::size_t rows, std::size_t cols);
/// Builds a cycle 0-1-...-(n-1)-0.
Graph make_ring(std::size_t n);

}  // namespace pref
