#include "pref/sequence.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pref/components.hpp"

namespace pref {

bool is_permutation_of(std::span<const NodeId> order, std::size_t n) {
  if (order.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (NodeId v : order) {
    if (v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

void require_permutation(std::span<const NodeId> order, std::size_t n) {
  if (!is_permutation_of(order, n)) {
    throw std::invalid_argument("sequence of length " + std::to_string(order.size()) +
                                " is not a permutation of " + std::to_string(n) + " node ids");
  }
}

std::vector<std::size_t> removal_profile(const Graph& graph, std::span<const NodeId> order) {
  const std::size_t n = graph.num_nodes();
  require_permutation(order, n);
  std::vector<std::size_t> lcc(n + 1, 0);
  ComponentView view(n);
  for (std::size_t j = n; j-- > 0;) {
    view.activate(graph, order[j]);
    lcc[j] = view.largest_size();
  }
  return lcc;
}

double fitness_from_profile(std::span<const std::size_t> profile) {
  const std::size_t n = profile.size() - 1;
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t j = 1; j <= n; ++j) sum += static_cast<double>(profile[j]);
  return sum / (static_cast<double>(n) * static_cast<double>(n));
}

std::size_t critical_count_from_profile(std::span<const std::size_t> profile, double delta) {
  const std::size_t n = profile.size() - 1;
  const double limit = delta * static_cast<double>(n);
  for (std::size_t j = 0; j <= n; ++j) {
    if (static_cast<double>(profile[j]) <= limit) return j;
  }
  return n;
}

SequenceFitness evaluate_sequence(const Graph& graph, std::span<const NodeId> order,
                                  std::optional<double> delta) {
  auto profile = removal_profile(graph, order);
  SequenceFitness fit;
  fit.f = fitness_from_profile(profile);
  if (delta) {
    const auto n = static_cast<double>(graph.num_nodes());
    fit.q_c = n == 0 ? 0.0 : static_cast<double>(critical_count_from_profile(profile, *delta)) / n;
  }
  return fit;
}

std::vector<NodeId> degree_descending_order(const Graph& graph) {
  std::vector<NodeId> order(graph.num_nodes());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return graph.degree(a) > graph.degree(b); });
  return order;
}

}  // namespace pref
