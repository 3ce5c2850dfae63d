#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "pref/graph.hpp"

namespace pref {

enum class GraphModel { ErdosRenyi, ConfigurationPowerLaw };

/// Parameters for a synthetic network.
///
/// ErdosRenyi uses `edges`. ConfigurationPowerLaw draws degrees from
/// p_k ~ k^-exponent with k >= min_degree; when `mean_degree` is set the
/// continuous scale of the power law is chosen so the expected degree matches
/// it (x_min = <k> (l-2)/(l-1)), otherwise the scale is `min_degree`.
struct GenSpec {
  GraphModel model = GraphModel::ErdosRenyi;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::optional<double> mean_degree;
  double exponent = 3.0;
  std::size_t min_degree = 2;
  std::uint64_t seed = 1;
};

struct GenReport {
  /// Set when the sampled stub total was odd and one node's degree was bumped.
  std::optional<NodeId> parity_fixed_node;
  std::size_t reshuffle_passes = 0;
  /// Self-loops and multi-edges left after the reshuffle budget and dropped.
  std::size_t dropped_defects = 0;
};

struct Generated {
  Graph graph;
  GenReport report;
};

/// Throws std::invalid_argument when the spec violates n >= 2,
/// edges <= n(n-1)/2, or exponent > 2.
Generated generate(const GenSpec& spec);

GraphModel parse_graph_model(const std::string& name);
std::string to_string(GraphModel model);

}  // namespace pref
