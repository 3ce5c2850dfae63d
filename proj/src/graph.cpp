#include "pref/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pref {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g;
  std::vector<Edge> clean;
  clean.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw std::out_of_range("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                              ") references a node outside [0, " + std::to_string(n) + ")");
    }
    if (u == v) {
      ++g.stats_.self_loops;
      continue;
    }
    clean.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(clean.begin(), clean.end());
  auto last = std::unique(clean.begin(), clean.end());
  g.stats_.duplicate_edges = static_cast<std::size_t>(clean.end() - last);
  clean.erase(last, clean.end());

  g.offsets_.assign(n + 1, 0);
  for (auto [u, v] : clean) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.targets_.resize(2 * clean.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : clean) {
    g.targets_[cursor[u]++] = v;
    g.targets_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph make_path(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

Graph make_star(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, e);
}

Graph make_grid(std::size_t rows, std::size_t cols) {
  std::vector<Edge> e;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      auto id = static_cast<NodeId>(r * cols + c);
      if (c + 1 < cols) e.emplace_back(id, id + 1);
      if (r + 1 < rows) e.emplace_back(id, static_cast<NodeId>(id + cols));
    }
  }
  return Graph::from_edges(rows * cols, e);
}

Graph make_ring(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.emplace_back(i, static_cast<NodeId>((i + 1) % n));
  return Graph::from_edges(n, e);
}

}  // namespace pref
