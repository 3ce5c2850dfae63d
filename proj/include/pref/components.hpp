#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "pref/graph.hpp"

namespace pref {

/// Identifies a component by its union-find representative. Ids are only
/// stable until the next activate() call.
struct ComponentId {
  NodeId root = 0;
  auto operator<=>(const ComponentId&) const = default;
};

/// Read-only snapshot of a ComponentView: per-node component label (the
/// representative, or kInactive) and per-label sizes. Safe to share across
/// threads.
struct ComponentLabels {
  static constexpr NodeId kInactive = static_cast<NodeId>(-1);
  std::vector<NodeId> label;
  std::vector<std::size_t> size;  // indexed by label

  bool is_active(NodeId v) const { return label[v] != kInactive; }
};

/// Connected components of the subgraph induced by the active nodes.
///
/// Backed by union-find with union-by-size and path compression. Inactive
/// nodes (the removed set, i.e. observers) belong to no component. Nodes can
/// only be switched on; removal is modelled by sweeping a removal order in
/// reverse and activating.
class ComponentView {
 public:
  ComponentView() = default;
  /// All nodes inactive.
  explicit ComponentView(std::size_t n);

  /// Switches `node` on and merges it with every active neighbour.
  /// Throws std::logic_error if the node is already active.
  void activate(const Graph& graph, NodeId node);

  bool is_active(NodeId node) const { return active_[node] != 0; }
  std::size_t num_nodes() const { return active_.size(); }
  std::size_t num_active() const { return num_active_; }
  std::size_t num_components() const { return num_components_; }
  std::size_t largest_size() const { return largest_; }

  /// Component of an active node, nullopt for inactive nodes.
  std::optional<ComponentId> component_of(NodeId node);
  /// Throws std::out_of_range if `id` is not a live component.
  std::size_t component_size(ComponentId id) const;
  bool is_component(ComponentId id) const;
  /// Sorted member list; O(n).
  std::vector<NodeId> members(ComponentId id);
  ComponentLabels labels();

 private:
  NodeId find(NodeId node);

  std::vector<NodeId> parent_;
  std::vector<std::size_t> size_;
  std::vector<char> active_;
  std::size_t num_active_ = 0;
  std::size_t num_components_ = 0;
  std::size_t largest_ = 0;
};

/// Components of the subgraph induced by nodes for which `is_active(v)` holds.
template <typename Pred>
ComponentView components(const Graph& graph, Pred&& is_active) {
  ComponentView view(graph.num_nodes());
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    if (is_active(v)) view.activate(graph, v);
  }
  return view;
}

/// Inactive nodes adjacent to at least one member of `component`.
std::vector<NodeId> boundary(const Graph& graph, ComponentView& view, ComponentId component);

/// Components adjacent to an inactive node (its component cover).
/// Throws std::invalid_argument for an active node.
std::vector<ComponentId> component_cover(const Graph& graph, ComponentView& view, NodeId node);

/// Node union of component_cover(node), sorted.
std::vector<NodeId> cover_nodes(const Graph& graph, ComponentView& view, NodeId node);

/// Size of the largest connected component by plain BFS over active nodes.
std::size_t largest_component_bfs(const Graph& graph, const std::vector<char>& active);

}  // namespace pref
