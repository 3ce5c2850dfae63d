#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pref/graph.hpp"
#include "pref/sequence.hpp"

namespace pref {

enum class RankMethod { Jordan, Degree };

/// Nodes ordered best-first with their scores (descending score).
struct NodeRank {
  RankMethod method = RankMethod::Jordan;
  std::vector<std::pair<NodeId, double>> entries;
  /// The infected set was disconnected and only its largest part was ranked.
  bool restricted_to_largest_part = false;

  std::vector<NodeId> top(std::size_t k) const;
};

/// Jordan-center ranking: score(v) = -eccentricity of v over the infected
/// set, with hop distances measured inside the infected-induced subgraph.
/// Candidates are the infected nodes; ties go to the smaller id.
/// Throws std::invalid_argument for an empty infected set.
NodeRank jordan_center(const Graph& graph, const std::vector<NodeId>& infected);

/// Number of infected nodes whose eccentricity is <= that of `source`, i.e.
/// how deep the Jordan ranking must be read (ties included) to reach the
/// source. Same value as scanning jordan_center(), but prunes with landmark
/// lower bounds.
std::size_t jordan_rank_depth(const Graph& graph, const std::vector<NodeId>& infected, NodeId source);

/// Degree-descending permutation, ties by id.
NodeSequence hub_sequence(const Graph& graph);

}  // namespace pref
