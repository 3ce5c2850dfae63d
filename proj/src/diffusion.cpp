#include "pref/diffusion.hpp"

#include <algorithm>
#include <stdexcept>

namespace pref {

double DiffusionModel::recovery() const {
  switch (kind) {
    case DiffusionKind::SIR:
      return gamma;
    case DiffusionKind::SI:
      return 0.0;
    case DiffusionKind::IC:
      return 1.0;
  }
  return gamma;
}

void DiffusionModel::validate() const {
  if (!(0.0 <= beta_min && beta_min <= beta && beta <= 1.0)) {
    throw std::invalid_argument("infection probabilities must satisfy 0 <= beta_min <= beta <= 1");
  }
  if (kind == DiffusionKind::SIR && !(0.0 <= gamma && gamma <= 1.0)) {
    throw std::invalid_argument("recovery probability must lie in [0, 1]");
  }
}

std::size_t DiffusionTrace::ever_infected() const {
  return static_cast<std::size_t>(
      std::count_if(infection_time.begin(), infection_time.end(), [](auto t) { return t != kNeverInfected; }));
}

DiffusionTrace simulate(const Graph& graph, const DiffusionModel& model, NodeId source, const StopRule& stop,
                        Rng& rng) {
  model.validate();
  const std::size_t n = graph.num_nodes();
  if (source >= n) throw std::out_of_range("diffusion source outside the graph");
  if (stop.outbreak_fraction && !(*stop.outbreak_fraction > 0.0 && *stop.outbreak_fraction <= 1.0)) {
    throw std::invalid_argument("outbreak fraction must lie in (0, 1]");
  }

  DiffusionTrace trace;
  trace.source = source;
  trace.infection_time.assign(n, kNeverInfected);
  trace.infector.assign(n, kNoNode);
  trace.final_state.assign(n, NodeState::Susceptible);
  trace.infection_time[source] = 0;
  trace.final_state[source] = NodeState::Infected;

  const bool per_edge = model.kind != DiffusionKind::SIR;
  const double gamma = model.recovery();
  // beta_uv drawn once per edge direction, on first use
  std::vector<double> edge_beta(per_edge ? 2 * graph.num_edges() : 0, -1.0);
  auto beta_of = [&](std::size_t slot) {
    if (!per_edge) return model.beta;
    double& b = edge_beta[slot];
    if (b < 0.0) b = uniform_real(rng, model.beta_min, model.beta);
    return b;
  };

  std::vector<NodeId> infected{source};
  std::vector<NodeId> fresh;
  std::vector<std::uint32_t> hits(n, 0);  // concurrent infectors this step
  std::size_t touched = 1;                // I + R
  auto reached = [&] {
    return stop.outbreak_fraction &&
           static_cast<double>(touched) >= *stop.outbreak_fraction * static_cast<double>(n);
  };

  // Without recovery a state with no possible transmission never changes.
  auto frozen = [&] {
    if (gamma > 0.0) return false;
    if (model.beta <= 0.0) return true;
    for (NodeId u : infected) {
      auto nb = graph.neighbors(u);
      const std::size_t base = graph.first_slot(u);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (trace.final_state[nb[i]] != NodeState::Susceptible) continue;
        if (!per_edge || edge_beta[base + i] != 0.0) return false;
      }
    }
    return true;
  };

  std::size_t t = 0;
  bool stuck = false;
  while (!infected.empty() && !reached() && !(stop.max_steps && t >= *stop.max_steps)) {
    if (t > 0 && fresh.empty() && frozen()) {
      stuck = true;
      break;
    }
    ++t;
    fresh.clear();
    for (NodeId u : infected) {
      auto nb = graph.neighbors(u);
      const std::size_t base = graph.first_slot(u);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        NodeId v = nb[i];
        if (trace.final_state[v] != NodeState::Susceptible) continue;
        if (uniform_real(rng) >= beta_of(base + i)) continue;
        if (hits[v] == 0) fresh.push_back(v);
        ++hits[v];
        if (uniform_int<std::uint32_t>(rng, 1, hits[v]) == 1) trace.infector[v] = u;
      }
    }
    std::size_t kept = 0;
    for (NodeId u : infected) {
      if (gamma > 0.0 && (gamma >= 1.0 || uniform_real(rng) < gamma)) {
        trace.final_state[u] = NodeState::Recovered;
      } else {
        infected[kept++] = u;
      }
    }
    infected.resize(kept);
    for (NodeId v : fresh) {
      hits[v] = 0;
      trace.final_state[v] = NodeState::Infected;
      trace.infection_time[v] = static_cast<std::uint32_t>(t);
      infected.push_back(v);
    }
    touched += fresh.size();
  }
  trace.horizon = stuck ? t - 1 : t;
  trace.died_out = (infected.empty() || stuck) && stop.outbreak_fraction && !reached();
  return trace;
}

ObserverConfig ObserverConfig::make(std::size_t n, std::vector<NodeId> observers, std::vector<NodeId> directional) {
  std::sort(observers.begin(), observers.end());
  std::sort(directional.begin(), directional.end());
  if (std::adjacent_find(observers.begin(), observers.end()) != observers.end() ||
      std::adjacent_find(directional.begin(), directional.end()) != directional.end()) {
    throw std::invalid_argument("observer sets must not contain duplicates");
  }
  if (!observers.empty() && observers.back() >= n) throw std::out_of_range("observer id outside the graph");
  if (!std::includes(observers.begin(), observers.end(), directional.begin(), directional.end())) {
    throw std::invalid_argument("directional observers must be a subset of the observers");
  }
  return {std::move(observers), std::move(directional)};
}

double ObserverConfig::fraction(std::size_t n) const {
  return n == 0 ? 0.0 : static_cast<double>(observers.size()) / static_cast<double>(n);
}

double ObserverConfig::directional_rate() const {
  return observers.empty() ? 0.0 : static_cast<double>(directional.size()) / static_cast<double>(observers.size());
}

bool ObserverConfig::is_observer(NodeId v) const { return std::binary_search(observers.begin(), observers.end(), v); }

bool ObserverConfig::is_directional(NodeId v) const {
  return std::binary_search(directional.begin(), directional.end(), v);
}

const ObserverRecord* ObserverReadout::find(NodeId v) const {
  auto it = std::lower_bound(records.begin(), records.end(), v,
                             [](const ObserverRecord& r, NodeId id) { return r.node < id; });
  return it != records.end() && it->node == v ? &*it : nullptr;
}

ObserverReadout read_observers(const DiffusionTrace& trace, const ObserverConfig& observers) {
  ObserverReadout out;
  out.num_nodes = trace.infection_time.size();
  std::uint32_t earliest = kNeverInfected;
  for (NodeId u : observers.observers) earliest = std::min(earliest, trace.infection_time[u]);
  out.records.reserve(observers.observers.size());
  for (NodeId u : observers.observers) {
    ObserverRecord r;
    r.node = u;
    r.directional = observers.is_directional(u);
    if (trace.infected(u)) {
      r.time = trace.infection_time[u] - earliest;
      if (r.directional && trace.infector[u] != kNoNode) r.infector = trace.infector[u];
    }
    out.records.push_back(r);
  }
  return out;
}

Sample generate_sample(const Graph& graph, const DiffusionModel& model, double epsilon,
                       const ObserverConfig& observers, Rng& rng) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("outbreak rate must lie in (0, 1]");
  const std::size_t n = graph.num_nodes();
  if (n == 0) throw std::invalid_argument("cannot sample a diffusion on an empty graph");
  Sample s;
  StopRule stop{epsilon, std::nullopt};
  while (true) {
    auto source = uniform_int<NodeId>(rng, 0, static_cast<NodeId>(n - 1));
    s.trace = simulate(graph, model, source, stop, rng);
    if (!s.trace.died_out) break;
    if (s.retries == kSampleRetryCap) {
      s.exhausted = true;
      break;
    }
    ++s.retries;
  }
  s.readout = read_observers(s.trace, observers);
  return s;
}

DiffusionKind parse_diffusion_kind(const std::string& name) {
  if (name == "sir" || name == "SIR" || name == "sir1" || name == "SIR1") return DiffusionKind::SIR;
  if (name == "si" || name == "SI" || name == "sir2" || name == "SIR2") return DiffusionKind::SI;
  if (name == "ic" || name == "IC" || name == "sir3" || name == "SIR3") return DiffusionKind::IC;
  throw std::invalid_argument("unknown diffusion model '" + name + "' (expected sir1, sir2 or sir3)");
}

std::string to_string(DiffusionKind kind) {
  switch (kind) {
    case DiffusionKind::SIR:
      return "sir1";
    case DiffusionKind::SI:
      return "sir2";
    case DiffusionKind::IC:
      return "sir3";
  }
  return "sir1";
}

}  // namespace pref
