#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pref/graph.hpp"

namespace pref {

/// Cached dismantling fitness of a removal order.
struct SequenceFitness {
  /// (1/n) * sum_{j=1..n} LCC(after removing the first j nodes) / n
  double f = 0.0;
  /// Smallest j/n with LCC/n <= delta; only meaningful when delta was given.
  std::optional<double> q_c;
};

/// A removal order: a permutation of all node ids. The first entries are the
/// nodes removed first (they become observers).
struct NodeSequence {
  std::vector<NodeId> order;
  std::optional<SequenceFitness> fitness;
};

/// Throws std::invalid_argument unless `order` is a permutation of [0, n).
void require_permutation(std::span<const NodeId> order, std::size_t n);
bool is_permutation_of(std::span<const NodeId> order, std::size_t n);

/// LCC sizes after removing the first j nodes of `order`, for j = 0..n,
/// computed in one reverse activation sweep.
std::vector<std::size_t> removal_profile(const Graph& graph, std::span<const NodeId> order);

/// F(S) from a removal profile.
double fitness_from_profile(std::span<const std::size_t> profile);

/// Smallest removal count j with LCC <= delta * n; profile[n] is always 0.
std::size_t critical_count_from_profile(std::span<const std::size_t> profile, double delta);

/// Exact fitness of a removal order (F, and q_c when delta is given).
SequenceFitness evaluate_sequence(const Graph& graph, std::span<const NodeId> order,
                                  std::optional<double> delta);

/// Degree-descending order, ties broken by ascending node id.
std::vector<NodeId> degree_descending_order(const Graph& graph);

}  // namespace pref
