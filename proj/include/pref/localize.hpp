#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pref/components.hpp"
#include "pref/diffusion.hpp"
#include "pref/graph.hpp"
#include "pref/rng.hpp"

namespace pref {

struct LocalizeParams {
  /// Upper bound of the random offset added to every walk length.
  std::uint32_t max_offset = 3;
  /// Hop radius of the final candidate ball around the estimate.
  std::size_t layers = 2;
  /// Number of reverse walks.
  std::size_t samples = 1000000;
};

struct PrimaryCandidates {
  std::vector<NodeId> nodes;
  /// No observer was infected; the candidate set is every node.
  bool unconstrained = false;
};

struct InteriorCandidates {
  std::vector<NodeId> interior;   // V_c''
  std::vector<NodeId> periphery;  // O''
};

struct RisEstimate {
  NodeId estimate = 0;
  /// (node, endpoint count) sorted by node; counts sum to the sample count.
  std::vector<std::pair<NodeId, std::size_t>> theta;
};

struct CandidateReport {
  std::vector<NodeId> earliest;   // O'
  std::vector<NodeId> primary;    // V_c'
  std::vector<NodeId> interior;   // V_c''
  std::vector<NodeId> periphery;  // O''
  std::optional<NodeId> estimate;
  std::vector<std::pair<NodeId, std::size_t>> theta;
  std::vector<NodeId> final_set;  // V_c
  double phi = 0.0;
  bool unconstrained = false;
};

/// Observers with the minimum finite time stamp; empty if none was infected.
/// Throws std::invalid_argument for an empty readout.
std::vector<NodeId> earliest_observers(const ObserverReadout& readout);

/// Intersection over u in O' of alpha(u), together with O' itself. For a
/// directional observer with a recorded infector v, alpha(u) is narrowed to
/// v's component (to {v} if v is itself an observer). `components` must
/// describe V \ O.
PrimaryCandidates primary_candidates(const Graph& graph, const ComponentLabels& components,
                                     const ObserverReadout& readout);
PrimaryCandidates primary_candidates(const Graph& graph, ComponentView& view, const ObserverReadout& readout);

/// V_c'' = V_c' minus O', then O'' = infected observers adjacent to V_c''.
InteriorCandidates interior_candidates(const Graph& graph, const std::vector<NodeId>& primary,
                                       const ObserverReadout& readout);

/// Reverse random walks on the subgraph induced by interior + periphery. Each
/// walk starts at a uniformly chosen periphery observer u and takes
/// (t_u - t_min) + U{0..max_offset} steps to uniform random neighbours; the
/// most frequent endpoint wins, ties to the smallest id.
/// Throws std::invalid_argument for an empty periphery or zero samples.
RisEstimate ris_estimate(const Graph& graph, const std::vector<NodeId>& interior,
                         const std::vector<NodeId>& periphery, const ObserverReadout& readout,
                         std::uint32_t max_offset, std::size_t samples, Rng& rng);

/// Nodes within `layers` hops of `estimate` that also lie in `primary`.
std::vector<NodeId> final_candidates(const Graph& graph, NodeId estimate, std::size_t layers,
                                     const std::vector<NodeId>& primary);

double phi(std::size_t candidates, std::size_t n);

/// Full pipeline: O', V_c', V_c'', O'', the walk estimate and V_c. When the
/// estimator cannot run (empty V_c'' or O''), V_c = V_c'.
CandidateReport localize(const Graph& graph, const ComponentLabels& components, const ObserverReadout& readout,
                         const LocalizeParams& params, Rng& rng);

/// Hop distance, or nullopt when unreachable.
std::optional<std::size_t> hop_distance(const Graph& graph, NodeId from, NodeId to);

}  // namespace pref
