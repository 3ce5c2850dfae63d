#include "pref/components.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace pref {

ComponentView::ComponentView(std::size_t n) : parent_(n), size_(n, 0), active_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), NodeId{0});
}

NodeId ComponentView::find(NodeId node) {
  NodeId root = node;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[node] != root) {
    NodeId next = parent_[node];
    parent_[node] = root;
    node = next;
  }
  return root;
}

void ComponentView::activate(const Graph& graph, NodeId node) {
  if (active_[node]) {
    throw std::logic_error("node " + std::to_string(node) + " is already active");
  }
  active_[node] = 1;
  size_[node] = 1;
  ++num_active_;
  ++num_components_;
  NodeId root = node;
  for (NodeId nb : graph.neighbors(node)) {
    if (!active_[nb]) continue;
    NodeId other = find(nb);
    if (other == root) continue;
    if (size_[other] > size_[root]) std::swap(other, root);
    parent_[other] = root;
    size_[root] += size_[other];
    --num_components_;
  }
  largest_ = std::max(largest_, size_[root]);
}

std::optional<ComponentId> ComponentView::component_of(NodeId node) {
  if (!active_[node]) return std::nullopt;
  return ComponentId{find(node)};
}

bool ComponentView::is_component(ComponentId id) const {
  return id.root < parent_.size() && active_[id.root] && parent_[id.root] == id.root;
}

std::size_t ComponentView::component_size(ComponentId id) const {
  if (!is_component(id)) {
    throw std::out_of_range("unknown component id " + std::to_string(id.root));
  }
  return size_[id.root];
}

std::vector<NodeId> ComponentView::members(ComponentId id) {
  if (!is_component(id)) {
    throw std::out_of_range("unknown component id " + std::to_string(id.root));
  }
  std::vector<NodeId> out;
  out.reserve(size_[id.root]);
  for (NodeId v = 0; v < parent_.size(); ++v) {
    if (active_[v] && find(v) == id.root) out.push_back(v);
  }
  return out;
}

ComponentLabels ComponentView::labels() {
  ComponentLabels out;
  out.label.assign(parent_.size(), ComponentLabels::kInactive);
  out.size.assign(parent_.size(), 0);
  for (NodeId v = 0; v < parent_.size(); ++v) {
    if (!active_[v]) continue;
    NodeId root = find(v);
    out.label[v] = root;
    out.size[root] = size_[root];
  }
  return out;
}

std::vector<NodeId> boundary(const Graph& graph, ComponentView& view, ComponentId component) {
  std::vector<char> seen(graph.num_nodes(), 0);
  std::vector<NodeId> out;
  for (NodeId v : view.members(component)) {
    for (NodeId nb : graph.neighbors(v)) {
      if (!view.is_active(nb) && !seen[nb]) {
        seen[nb] = 1;
        out.push_back(nb);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ComponentId> component_cover(const Graph& graph, ComponentView& view, NodeId node) {
  if (view.is_active(node)) {
    throw std::invalid_argument("component cover is defined for inactive nodes only; node " +
                                std::to_string(node) + " is active");
  }
  std::vector<ComponentId> out;
  for (NodeId nb : graph.neighbors(node)) {
    if (auto c = view.component_of(nb)) out.push_back(*c);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<NodeId> cover_nodes(const Graph& graph, ComponentView& view, NodeId node) {
  auto cover = component_cover(graph, view, node);
  std::vector<NodeId> out;
  if (cover.empty()) return out;
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    auto c = view.component_of(v);
    if (c && std::binary_search(cover.begin(), cover.end(), *c)) out.push_back(v);
  }
  return out;
}

std::size_t largest_component_bfs(const Graph& graph, const std::vector<char>& active) {
  std::vector<char> seen(graph.num_nodes(), 0);
  std::size_t best = 0;
  std::queue<NodeId> frontier;
  for (NodeId s = 0; s < graph.num_nodes(); ++s) {
    if (!active[s] || seen[s]) continue;
    seen[s] = 1;
    frontier.push(s);
    std::size_t count = 0;
    while (!frontier.empty()) {
      NodeId v = frontier.front();
      frontier.pop();
      ++count;
      for (NodeId nb : graph.neighbors(v)) {
        if (active[nb] && !seen[nb]) {
          seen[nb] = 1;
          frontier.push(nb);
        }
      }
    }
    best = std::max(best, count);
  }
  return best;
}

}  // namespace pref
