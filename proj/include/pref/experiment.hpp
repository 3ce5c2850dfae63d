#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pref/diffusion.hpp"
#include "pref/generators.hpp"
#include "pref/immunize.hpp"
#include "pref/io.hpp"
#include "pref/localize.hpp"

namespace pref {

enum class ObserverStrategy { PrEF, Hubs, Random, External };
/// How O_d is drawn from O: uniformly at random per trial, or the first
/// floor(R_d |O|) nodes of the observer sequence.
enum class DirectionalMode { Random, Importance };
/// JC candidate set: every node ranked at least as high as the true source
/// (Rank), or the top |V_c(PrEF)| nodes of the ranking (Matched).
enum class JordanMode { Off, Rank, Matched };

struct ExperimentSpec {
  std::string network_id = "network";
  ObserverStrategy strategy = ObserverStrategy::PrEF;
  std::string sequence_path;  // External strategy
  /// AEF settings; max_block and epochs fall back to the size-based preset.
  std::optional<std::size_t> aef_epochs;
  std::optional<std::size_t> aef_max_block;
  double delta = 0.005;
  RRParams rr;

  std::vector<double> q_grid{0.25};
  std::vector<double> rd_grid{0.0, 1.0};
  DirectionalMode rd_mode = DirectionalMode::Random;

  DiffusionKind model = DiffusionKind::SIR;
  std::vector<double> beta_grid{0.5};
  double beta_min = 0.0;
  double gamma = 0.1;
  std::vector<double> epsilon_grid{0.10};

  LocalizeParams localize;
  JordanMode jordan = JordanMode::Off;

  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t threads = 1;

  /// Throws std::invalid_argument for empty grids, zero trials or values
  /// outside their ranges.
  void validate() const;
};

/// One (grid point, trial, R_d) localization.
struct TrialRow {
  std::string network;
  std::string strategy;
  double q = 0.0;
  double rd = 0.0;
  std::string model;
  double beta = 0.0;
  double epsilon = 0.0;
  std::size_t trial = 0;
  NodeId source = 0;
  double outbreak = 0.0;  // (I + R) / n at the stop step
  std::size_t retries = 0;
  std::size_t primary_size = 0;
  std::size_t final_size = 0;
  double phi = 0.0;
  bool source_in_primary = false;
  bool source_in_final = false;
  std::optional<NodeId> estimate;
  std::optional<std::size_t> error_distance;
  std::optional<std::size_t> jordan_size;
  std::optional<bool> jordan_hit;
  double wall_seconds = 0.0;
};

struct AggregateRow {
  double q = 0.0;
  double rd = 0.0;
  double beta = 0.0;
  double epsilon = 0.0;
  std::size_t trials = 0;
  double mean_phi = 0.0;
  double ci95_phi = 0.0;
  double mean_primary = 0.0;
  double soundness = 0.0;  // fraction of trials with the source in V_c'
  std::optional<double> mean_phi_jordan;
};

struct ExperimentResult {
  std::vector<TrialRow> rows;
  std::vector<AggregateRow> aggregates;
  NodeSequence sequence;
};

/// Observer sequence for a strategy (AEF for PrEF, degree order for Hubs,
/// a seeded shuffle for Random, the file for External).
NodeSequence observer_sequence(const LabeledGraph& g, const ExperimentSpec& spec);

/// Runs every (q, beta, epsilon) grid point for spec.trials trials; each trial
/// draws one diffusion and localizes it once per R_d value. Results depend
/// only on (graph, spec), not on spec.threads.
ExperimentResult run_experiment(const LabeledGraph& g, const ExperimentSpec& spec);
ExperimentResult run_experiment(const LabeledGraph& g, const ExperimentSpec& spec, NodeSequence sequence);

/// Thrown when a trial fails; carries every row completed before the failure.
class ExperimentFailure : public std::runtime_error {
 public:
  ExperimentFailure(const std::string& what, ExperimentResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const ExperimentResult& partial() const { return partial_; }

 private:
  ExperimentResult partial_;
};

/// Column order of the CSV trial rows (documented in the README).
const std::vector<std::string>& csv_columns();
void write_csv(std::ostream& out, const ExperimentResult& result, const LabeledGraph& g);
/// One row per (q, R_d, beta, epsilon) with mean phi, its 95% CI and soundness.
void write_summary_csv(std::ostream& out, const ExperimentResult& result);
/// Wall-clock timings, kept apart from the deterministic results.
void write_timing_csv(std::ostream& out, const ExperimentResult& result);
nlohmann::json to_json(const ExperimentResult& result, const LabeledGraph& g);

ObserverStrategy parse_strategy(const std::string& name);
std::string to_string(ObserverStrategy strategy);
DirectionalMode parse_directional_mode(const std::string& name);
JordanMode parse_jordan_mode(const std::string& name);

}  // namespace pref
