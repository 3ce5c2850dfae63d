#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pref/graph.hpp"
#include "pref/rng.hpp"

namespace pref {

inline constexpr std::uint32_t kNeverInfected = std::numeric_limits<std::uint32_t>::max();
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// SIR1: beta_uv = beta, gamma_u = gamma.
/// SI (SIR2): beta_uv uniform on [beta_min, beta] per edge direction, gamma = 0.
/// IC (SIR3): beta_uv uniform on [beta_min, beta] per edge direction, gamma = 1.
enum class DiffusionKind { SIR, SI, IC };

struct DiffusionModel {
  DiffusionKind kind = DiffusionKind::SIR;
  double beta_min = 0.0;
  double beta = 0.5;
  double gamma = 0.1;

  static DiffusionModel sir(double beta, double gamma) { return {DiffusionKind::SIR, beta, beta, gamma}; }
  static DiffusionModel si(double beta_min, double beta) { return {DiffusionKind::SI, beta_min, beta, 0.0}; }
  static DiffusionModel ic(double beta_min, double beta) { return {DiffusionKind::IC, beta_min, beta, 1.0}; }

  double recovery() const;
  /// Throws std::invalid_argument unless 0 <= beta_min <= beta <= 1 and gamma in [0, 1].
  void validate() const;
};

enum class NodeState : unsigned char { Susceptible, Infected, Recovered };

/// Stops at the first step where (I + R) / n >= outbreak_fraction, or after
/// max_steps. With neither set the diffusion runs until no node is infected.
struct StopRule {
  std::optional<double> outbreak_fraction;
  std::optional<std::size_t> max_steps;
};

struct DiffusionTrace {
  NodeId source = 0;
  /// Step of infection, kNeverInfected if never infected.
  std::vector<std::uint32_t> infection_time;
  /// Transmitting neighbour, kNoNode for the source and never-infected nodes.
  std::vector<NodeId> infector;
  std::vector<NodeState> final_state;
  std::size_t horizon = 0;
  /// Infection vanished, or can no longer spread, before the outbreak
  /// fraction was reached.
  bool died_out = false;

  std::size_t ever_infected() const;
  bool infected(NodeId v) const { return infection_time[v] != kNeverInfected; }
};

/// Synchronous discrete-time dynamics. Each step every infected node tries
/// each susceptible neighbour, then rolls recovery. Concurrent infectors of
/// one node are resolved uniformly at random.
DiffusionTrace simulate(const Graph& graph, const DiffusionModel& model, NodeId source, const StopRule& stop,
                        Rng& rng);

/// Observers O and the direction-recording subset O_d.
struct ObserverConfig {
  std::vector<NodeId> observers;
  std::vector<NodeId> directional;

  /// Sorts and validates: ids in range, no duplicates, O_d subset of O.
  static ObserverConfig make(std::size_t n, std::vector<NodeId> observers, std::vector<NodeId> directional);
  double fraction(std::size_t n) const;
  double directional_rate() const;
  bool is_observer(NodeId v) const;
  bool is_directional(NodeId v) const;
};

struct ObserverRecord {
  NodeId node = 0;
  /// Relative time stamp (earliest observed infection is 0); nullopt while susceptible.
  std::optional<std::uint32_t> time;
  bool directional = false;
  /// Only for directional observers that were infected by a neighbour.
  std::optional<NodeId> infector;
};

/// Everything localization may see about one diffusion.
struct ObserverReadout {
  std::size_t num_nodes = 0;
  /// Sorted by node id.
  std::vector<ObserverRecord> records;

  const ObserverRecord* find(NodeId v) const;
};

ObserverReadout read_observers(const DiffusionTrace& trace, const ObserverConfig& observers);

inline constexpr std::size_t kSampleRetryCap = 100;

struct Sample {
  DiffusionTrace trace;
  ObserverReadout readout;
  /// Died-out attempts that were discarded before this one.
  std::size_t retries = 0;
  /// All attempts died out; `trace` is the last one.
  bool exhausted = false;
};

/// Uniform random source, run until (I + R) / n >= epsilon, resampling a
/// fresh source when the diffusion dies out (up to kSampleRetryCap times).
Sample generate_sample(const Graph& graph, const DiffusionModel& model, double epsilon,
                       const ObserverConfig& observers, Rng& rng);

DiffusionKind parse_diffusion_kind(const std::string& name);
std::string to_string(DiffusionKind kind);

}  // namespace pref
