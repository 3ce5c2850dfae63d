#include "pref/localize.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

namespace pref {
namespace {

// One cover alpha(u): a union of whole components, or a single observer node
// when a recorded infector is itself an observer.
struct CoverTerm {
  std::vector<NodeId> components;
  std::vector<NodeId> extras;

  bool contains(const ComponentLabels& labels, NodeId x) const {
    if (labels.is_active(x) && std::binary_search(components.begin(), components.end(), labels.label[x])) {
      return true;
    }
    return std::binary_search(extras.begin(), extras.end(), x);
  }
};

CoverTerm cover_term(const Graph& graph, const ComponentLabels& labels, const ObserverRecord& rec) {
  const NodeId u = rec.node;
  if (labels.is_active(u)) {
    throw std::invalid_argument("observer " + std::to_string(u) +
                                " is active; components must be built on the non-observer nodes");
  }
  CoverTerm term;
  if (rec.directional && rec.infector) {
    const NodeId v = *rec.infector;
    if (labels.is_active(v)) {
      term.components.push_back(labels.label[v]);
    } else {
      term.extras.push_back(v);
    }
    return term;
  }
  for (NodeId nb : graph.neighbors(u)) {
    if (labels.is_active(nb)) term.components.push_back(labels.label[nb]);
  }
  std::sort(term.components.begin(), term.components.end());
  term.components.erase(std::unique(term.components.begin(), term.components.end()), term.components.end());
  return term;
}

}  // namespace

std::vector<NodeId> earliest_observers(const ObserverReadout& readout) {
  if (readout.records.empty()) throw std::invalid_argument("observer readout is empty");
  std::optional<std::uint32_t> best;
  for (const auto& r : readout.records) {
    if (r.time && (!best || *r.time < *best)) best = r.time;
  }
  std::vector<NodeId> out;
  if (!best) return out;
  for (const auto& r : readout.records) {
    if (r.time && *r.time == *best) out.push_back(r.node);
  }
  return out;
}

PrimaryCandidates primary_candidates(const Graph& graph, const ComponentLabels& components,
                                     const ObserverReadout& readout) {
  PrimaryCandidates out;
  const auto earliest = earliest_observers(readout);
  const std::size_t n = graph.num_nodes();
  if (earliest.empty()) {
    out.unconstrained = true;
    out.nodes.resize(n);
    for (NodeId v = 0; v < n; ++v) out.nodes[v] = v;
    return out;
  }
  std::vector<CoverTerm> terms;
  terms.reserve(earliest.size());
  for (NodeId u : earliest) terms.push_back(cover_term(graph, components, *readout.find(u)));
  for (NodeId x = 0; x < n; ++x) {
    bool all = true;
    if (std::binary_search(earliest.begin(), earliest.end(), x)) {
      out.nodes.push_back(x);
      continue;
    }
    for (const auto& t : terms) {
      if (!t.contains(components, x)) {
        all = false;
        break;
      }
    }
    if (all) out.nodes.push_back(x);
  }
  return out;
}

PrimaryCandidates primary_candidates(const Graph& graph, ComponentView& view, const ObserverReadout& readout) {
  return primary_candidates(graph, view.labels(), readout);
}

InteriorCandidates interior_candidates(const Graph& graph, const std::vector<NodeId>& primary,
                                       const ObserverReadout& readout) {
  InteriorCandidates out;
  std::vector<NodeId> earliest;
  if (!readout.records.empty()) earliest = earliest_observers(readout);
  std::set_difference(primary.begin(), primary.end(), earliest.begin(), earliest.end(),
                      std::back_inserter(out.interior));
  if (out.interior.empty()) return out;
  std::vector<char> inside(graph.num_nodes(), 0);
  for (NodeId v : out.interior) inside[v] = 1;
  for (const auto& r : readout.records) {
    if (!r.time) continue;
    for (NodeId nb : graph.neighbors(r.node)) {
      if (inside[nb]) {
        out.periphery.push_back(r.node);
        break;
      }
    }
  }
  return out;
}

RisEstimate ris_estimate(const Graph& graph, const std::vector<NodeId>& interior,
                         const std::vector<NodeId>& periphery, const ObserverReadout& readout,
                         std::uint32_t max_offset, std::size_t samples, Rng& rng) {
  if (periphery.empty()) throw std::invalid_argument("walk estimator needs a nonempty periphery");
  if (samples == 0) throw std::invalid_argument("walk estimator needs at least one sample");

  // Local ids follow ascending node id so argmax ties resolve to the smallest id.
  std::vector<NodeId> nodes;
  std::merge(interior.begin(), interior.end(), periphery.begin(), periphery.end(), std::back_inserter(nodes));
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  auto local = [&](NodeId v) -> std::optional<std::size_t> {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
    if (it == nodes.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - nodes.begin());
  };
  // Reverse of an undirected subgraph is the subgraph itself.
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (NodeId nb : graph.neighbors(nodes[i])) {
      if (auto j = local(nb)) adj[i].push_back(*j);
    }
  }

  std::uint32_t t_min = kNeverInfected;
  std::vector<std::uint32_t> delay(periphery.size());
  std::vector<std::size_t> start(periphery.size());
  for (std::size_t i = 0; i < periphery.size(); ++i) {
    const auto* rec = readout.find(periphery[i]);
    if (!rec || !rec->time) throw std::invalid_argument("periphery nodes must be infected observers");
    delay[i] = *rec->time;
    t_min = std::min(t_min, *rec->time);
    start[i] = *local(periphery[i]);
  }
  for (auto& d : delay) d -= t_min;

  std::vector<std::size_t> counts(nodes.size(), 0);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto pick = uniform_int<std::size_t>(rng, 0, periphery.size() - 1);
    std::size_t at = start[pick];
    const std::uint32_t steps = delay[pick] + uniform_int<std::uint32_t>(rng, 0, max_offset);
    for (std::uint32_t k = 0; k < steps && !adj[at].empty(); ++k) {
      at = adj[at][uniform_int<std::size_t>(rng, 0, adj[at].size() - 1)];
    }
    ++counts[at];
  }

  RisEstimate out;
  std::size_t best = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (counts[i] == 0) continue;
    out.theta.emplace_back(nodes[i], counts[i]);
    if (counts[i] > counts[best] || counts[best] == 0) best = i;
  }
  out.estimate = nodes[best];
  return out;
}

std::vector<NodeId> final_candidates(const Graph& graph, NodeId estimate, std::size_t layers,
                                     const std::vector<NodeId>& primary) {
  std::vector<std::size_t> dist(graph.num_nodes(), static_cast<std::size_t>(-1));
  std::vector<NodeId> ball{estimate};
  dist[estimate] = 0;
  for (std::size_t head = 0; head < ball.size(); ++head) {
    NodeId v = ball[head];
    if (dist[v] == layers) continue;
    for (NodeId nb : graph.neighbors(v)) {
      if (dist[nb] == static_cast<std::size_t>(-1)) {
        dist[nb] = dist[v] + 1;
        ball.push_back(nb);
      }
    }
  }
  std::sort(ball.begin(), ball.end());
  std::vector<NodeId> out;
  std::set_intersection(ball.begin(), ball.end(), primary.begin(), primary.end(), std::back_inserter(out));
  return out;
}

double phi(std::size_t candidates, std::size_t n) {
  return n == 0 ? 0.0 : static_cast<double>(candidates) / static_cast<double>(n);
}

CandidateReport localize(const Graph& graph, const ComponentLabels& components, const ObserverReadout& readout,
                         const LocalizeParams& params, Rng& rng) {
  CandidateReport report;
  report.earliest = earliest_observers(readout);
  auto primary = primary_candidates(graph, components, readout);
  report.primary = std::move(primary.nodes);
  report.unconstrained = primary.unconstrained;
  auto inner = interior_candidates(graph, report.primary, readout);
  report.interior = std::move(inner.interior);
  report.periphery = std::move(inner.periphery);
  if (!report.interior.empty() && !report.periphery.empty()) {
    auto est = ris_estimate(graph, report.interior, report.periphery, readout, params.max_offset, params.samples, rng);
    report.estimate = est.estimate;
    report.theta = std::move(est.theta);
    report.final_set = final_candidates(graph, est.estimate, params.layers, report.primary);
  } else {
    report.final_set = report.primary;
  }
  report.phi = phi(report.final_set.size(), graph.num_nodes());
  return report;
}

std::optional<std::size_t> hop_distance(const Graph& graph, NodeId from, NodeId to) {
  if (from == to) return 0;
  std::vector<std::size_t> dist(graph.num_nodes(), static_cast<std::size_t>(-1));
  std::queue<NodeId> q;
  dist[from] = 0;
  q.push(from);
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop();
    for (NodeId nb : graph.neighbors(v)) {
      if (dist[nb] != static_cast<std::size_t>(-1)) continue;
      dist[nb] = dist[v] + 1;
      if (nb == to) return dist[nb];
      q.push(nb);
    }
  }
  return std::nullopt;
}

}  // namespace pref
