#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "pref/generators.hpp"
#include "pref/graph.hpp"
#include "pref/rng.hpp"

namespace testing {

inline pref::Graph random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  pref::GenSpec spec;
  spec.model = pref::GraphModel::ErdosRenyi;
  spec.nodes = n;
  spec.edges = m;
  spec.seed = seed;
  return pref::generate(spec).graph;
}

inline std::vector<pref::NodeId> shuffled_ids(std::size_t n, pref::Rng& rng) {
  std::vector<pref::NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), pref::NodeId{0});
  std::shuffle(ids.begin(), ids.end(), rng);
  return ids;
}

// Component label per node by BFS over `active`, -1 for inactive nodes.
inline std::vector<long> bfs_labels(const pref::Graph& g, const std::vector<char>& active) {
  std::vector<long> label(g.num_nodes(), -1);
  long next = 0;
  for (pref::NodeId s = 0; s < g.num_nodes(); ++s) {
    if (!active[s] || label[s] >= 0) continue;
    std::vector<pref::NodeId> queue{s};
    label[s] = next;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (auto nb : g.neighbors(queue[h])) {
        if (active[nb] && label[nb] < 0) {
          label[nb] = next;
          queue.push_back(nb);
        }
      }
    }
    ++next;
  }
  return label;
}

// LCC size after removing the first k nodes of `order`, recomputed from scratch.
inline std::size_t naive_lcc_after(const pref::Graph& g, const std::vector<pref::NodeId>& order, std::size_t k) {
  std::vector<char> active(g.num_nodes(), 1);
  for (std::size_t i = 0; i < k; ++i) active[order[i]] = 0;
  auto label = bfs_labels(g, active);
  std::vector<std::size_t> size(g.num_nodes() + 1, 0);
  for (long l : label) {
    if (l >= 0) ++size[static_cast<std::size_t>(l)];
  }
  return *std::max_element(size.begin(), size.end());
}

inline std::vector<std::size_t> bfs_distances(const pref::Graph& g, pref::NodeId from) {
  std::vector<std::size_t> dist(g.num_nodes(), static_cast<std::size_t>(-1));
  std::vector<pref::NodeId> queue{from};
  dist[from] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (auto nb : g.neighbors(queue[h])) {
      if (dist[nb] == static_cast<std::size_t>(-1)) {
        dist[nb] = dist[queue[h]] + 1;
        queue.push_back(nb);
      }
    }
  }
  return dist;
}

}  // namespace testing
