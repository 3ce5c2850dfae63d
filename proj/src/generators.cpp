#include "pref/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "pref/rng.hpp"

namespace pref {
namespace {

constexpr int kMaxReshufflePasses = 100;

std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

Generated erdos_renyi(const GenSpec& spec) {
  const std::uint64_t n = spec.nodes;
  const std::uint64_t pairs = n * (n - 1) / 2;
  Rng rng(spec.seed);

  // Sample the smaller of the edge set and its complement.
  const bool complement = spec.edges > pairs / 2;
  const std::uint64_t draws = complement ? pairs - spec.edges : spec.edges;
  std::unordered_set<std::uint64_t> picked;
  picked.reserve(draws * 2);
  while (picked.size() < draws) {
    auto u = uniform_int<NodeId>(rng, 0, static_cast<NodeId>(n - 1));
    auto v = uniform_int<NodeId>(rng, 0, static_cast<NodeId>(n - 1));
    if (u == v) continue;
    picked.insert(edge_key(u, v));
  }

  std::vector<Edge> edges;
  edges.reserve(spec.edges);
  if (complement) {
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (!picked.contains(edge_key(u, v))) edges.emplace_back(u, v);
      }
    }
  } else {
    for (auto key : picked) {
      edges.emplace_back(static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffu));
    }
    // unordered_set iteration order is not part of the contract
    std::sort(edges.begin(), edges.end());
  }
  return {Graph::from_edges(n, edges), {}};
}

Generated configuration_power_law(const GenSpec& spec) {
  const std::size_t n = spec.nodes;
  const double l = spec.exponent;
  Rng rng(spec.seed);
  GenReport report;

  const double scale = spec.mean_degree ? *spec.mean_degree * (l - 2.0) / (l - 1.0)
                                        : static_cast<double>(spec.min_degree);
  const auto k_max = static_cast<double>(n - 1);
  std::vector<std::size_t> degree(n);
  std::size_t stubs = 0;
  for (auto& k : degree) {
    double u = 1.0 - uniform_real(rng);  // (0, 1]
    double x = scale * std::pow(u, -1.0 / (l - 1.0));
    double rounded = std::floor(x + 0.5);
    rounded = std::clamp(rounded, static_cast<double>(spec.min_degree), k_max);
    k = static_cast<std::size_t>(rounded);
    stubs += k;
  }
  if (stubs % 2 == 1) {
    NodeId v;
    do {
      v = uniform_int<NodeId>(rng, 0, static_cast<NodeId>(n - 1));
    } while (degree[v] + 1 > n - 1);
    ++degree[v];
    report.parity_fixed_node = v;
  }

  std::vector<NodeId> stub_list;
  for (NodeId v = 0; v < n; ++v) stub_list.insert(stub_list.end(), degree[v], v);
  std::shuffle(stub_list.begin(), stub_list.end(), rng);
  std::vector<Edge> edges(stub_list.size() / 2);
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i] = {stub_list[2 * i], stub_list[2 * i + 1]};

  auto find_defects = [&] {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size() * 2);
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto [u, v] = edges[i];
      if (u == v || !seen.insert(edge_key(u, v)).second) bad.push_back(i);
    }
    return bad;
  };

  auto bad = find_defects();
  while (!bad.empty() && report.reshuffle_passes < kMaxReshufflePasses) {
    ++report.reshuffle_passes;
    // Re-pair the defective edges together with as many random edges, so the
    // defective stubs get fresh partners.
    std::vector<char> chosen(edges.size(), 0);
    for (auto i : bad) chosen[i] = 1;
    const std::size_t extra = std::min(bad.size(), edges.size() - bad.size());
    std::vector<std::size_t> slots = bad;
    while (slots.size() < bad.size() + extra) {
      auto i = uniform_int<std::size_t>(rng, 0, edges.size() - 1);
      if (!chosen[i]) {
        chosen[i] = 1;
        slots.push_back(i);
      }
    }
    std::vector<NodeId> pool;
    pool.reserve(2 * slots.size());
    for (auto i : slots) {
      pool.push_back(edges[i].first);
      pool.push_back(edges[i].second);
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    for (std::size_t s = 0; s < slots.size(); ++s) edges[slots[s]] = {pool[2 * s], pool[2 * s + 1]};
    bad = find_defects();
  }
  report.dropped_defects = bad.size();
  Graph g = Graph::from_edges(n, edges);
  return {std::move(g), report};
}

}  // namespace

Generated generate(const GenSpec& spec) {
  if (spec.nodes < 2) throw std::invalid_argument("a generated network needs at least 2 nodes");
  if (spec.nodes > 0xffffffffULL) throw std::invalid_argument("node count exceeds 32-bit ids");
  switch (spec.model) {
    case GraphModel::ErdosRenyi: {
      const std::uint64_t n = spec.nodes;
      if (spec.edges > n * (n - 1) / 2) {
        throw std::invalid_argument("edge count exceeds n(n-1)/2 for a simple graph");
      }
      return erdos_renyi(spec);
    }
    case GraphModel::ConfigurationPowerLaw:
      if (!(spec.exponent > 2.0)) {
        throw std::invalid_argument("power-law exponent must exceed 2");
      }
      if (spec.min_degree < 1 || spec.min_degree > spec.nodes - 1) {
        throw std::invalid_argument("min degree must lie in [1, n-1]");
      }
      if (spec.mean_degree && !(*spec.mean_degree > 0.0)) {
        throw std::invalid_argument("mean degree must be positive");
      }
      return configuration_power_law(spec);
  }
  throw std::invalid_argument("unknown graph model");
}

GraphModel parse_graph_model(const std::string& name) {
  if (name == "er" || name == "erdos-renyi") return GraphModel::ErdosRenyi;
  if (name == "sf" || name == "configuration-powerlaw") return GraphModel::ConfigurationPowerLaw;
  throw std::invalid_argument("unknown graph model '" + name + "' (expected erdos-renyi or configuration-powerlaw)");
}

std::string to_string(GraphModel model) {
  return model == GraphModel::ErdosRenyi ? "erdos-renyi" : "configuration-powerlaw";
}

}  // namespace pref
