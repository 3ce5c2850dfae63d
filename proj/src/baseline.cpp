#include "pref/baseline.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pref {
namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

// Infected-induced subgraph on local ids 0..k-1 (ascending node id).
struct InducedGraph {
  std::vector<NodeId> nodes;
  std::vector<std::vector<std::size_t>> adj;

  InducedGraph(const Graph& graph, std::vector<NodeId> members) : nodes(std::move(members)) {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    std::vector<std::size_t> local(graph.num_nodes(), kUnreached);
    for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = i;
    adj.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (NodeId nb : graph.neighbors(nodes[i])) {
        if (local[nb] != kUnreached) adj[i].push_back(local[nb]);
      }
    }
  }

  std::size_t local_id(NodeId v) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
    if (it == nodes.end() || *it != v) throw std::invalid_argument("node is not in the infected set");
    return static_cast<std::size_t>(it - nodes.begin());
  }

  // Distances from `from`; stops expanding beyond `cap` hops.
  std::vector<std::size_t> bfs(std::size_t from, std::size_t cap = kUnreached) const {
    std::vector<std::size_t> dist(nodes.size(), kUnreached);
    std::vector<std::size_t> queue{from};
    dist[from] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::size_t v = queue[head];
      if (dist[v] >= cap) continue;
      for (std::size_t nb : adj[v]) {
        if (dist[nb] == kUnreached) {
          dist[nb] = dist[v] + 1;
          queue.push_back(nb);
        }
      }
    }
    return dist;
  }

  // Largest connected part, as a mask.
  std::vector<char> largest_part() const {
    std::vector<std::size_t> comp(nodes.size(), kUnreached);
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> queue;
    for (std::size_t s = 0; s < nodes.size(); ++s) {
      if (comp[s] != kUnreached) continue;
      const std::size_t c = sizes.size();
      queue.assign(1, s);
      comp[s] = c;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        for (std::size_t nb : adj[queue[head]]) {
          if (comp[nb] == kUnreached) {
            comp[nb] = c;
            queue.push_back(nb);
          }
        }
      }
      sizes.push_back(queue.size());
    }
    const auto best = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::vector<char> mask(nodes.size(), 0);
    for (std::size_t v = 0; v < nodes.size(); ++v) mask[v] = comp[v] == best;
    return mask;
  }
};

std::size_t eccentricity(const std::vector<std::size_t>& dist, const std::vector<char>& mask) {
  std::size_t ecc = 0;
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (mask[v]) ecc = std::max(ecc, dist[v]);
  }
  return ecc;
}

}  // namespace

std::vector<NodeId> NodeRank::top(std::size_t k) const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < std::min(k, entries.size()); ++i) out.push_back(entries[i].first);
  return out;
}

NodeRank jordan_center(const Graph& graph, const std::vector<NodeId>& infected) {
  if (infected.empty()) throw std::invalid_argument("Jordan center needs a nonempty infected set");
  InducedGraph sub(graph, infected);
  auto mask = sub.largest_part();
  NodeRank rank;
  rank.method = RankMethod::Jordan;
  rank.restricted_to_largest_part = std::count(mask.begin(), mask.end(), 1) != static_cast<long>(mask.size());
  for (std::size_t v = 0; v < sub.nodes.size(); ++v) {
    if (!mask[v]) continue;
    rank.entries.emplace_back(sub.nodes[v], -static_cast<double>(eccentricity(sub.bfs(v), mask)));
  }
  std::stable_sort(rank.entries.begin(), rank.entries.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return rank;
}

std::size_t jordan_rank_depth(const Graph& graph, const std::vector<NodeId>& infected, NodeId source) {
  if (infected.empty()) throw std::invalid_argument("Jordan center needs a nonempty infected set");
  InducedGraph sub(graph, infected);
  const std::size_t k = sub.nodes.size();
  const std::size_t s = sub.local_id(source);
  auto mask = sub.largest_part();
  if (!mask[s]) return k;

  auto from_source = sub.bfs(s);
  const std::size_t target = eccentricity(from_source, mask);

  // Every landmark is infected, so d(v, landmark) bounds ecc(v) from below.
  std::vector<std::size_t> lower(k, 0);
  auto absorb = [&](const std::vector<std::size_t>& dist) {
    std::size_t far = s;
    for (std::size_t v = 0; v < k; ++v) {
      if (!mask[v]) continue;
      lower[v] = std::max(lower[v], dist[v]);
      if (dist[v] > dist[far]) far = v;
    }
    return far;
  };
  std::size_t next = absorb(from_source);
  for (int landmark = 0; landmark < 4; ++landmark) next = absorb(sub.bfs(next));

  std::size_t depth = 0;
  for (std::size_t v = 0; v < k; ++v) {
    if (!mask[v] || lower[v] > target) continue;
    auto dist = sub.bfs(v, target);
    bool within = true;
    for (std::size_t w = 0; w < k && within; ++w) {
      if (mask[w] && dist[w] > target) within = false;
    }
    if (within) ++depth;
  }
  return depth;
}

NodeSequence hub_sequence(const Graph& graph) { return {degree_descending_order(graph), std::nullopt}; }

}  // namespace pref
