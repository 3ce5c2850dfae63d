#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pref/graph.hpp"
#include "pref/rng.hpp"
#include "pref/sequence.hpp"

namespace pref {

/// How the cost of reinserting a node is aggregated over the distinct
/// components it would join.
enum class XiMode { Sum, Product };

struct RRParams {
  /// Upper bound for the number of candidate draws per position.
  std::size_t max_draws = 50;
  /// Upper bound for the window fraction r; the window is r * n positions.
  double max_window = 1.0;
  /// Rounds per RR invocation.
  std::size_t rounds = 20;
  XiMode xi = XiMode::Sum;
  /// Target LCC fraction. When set, RR minimises q_c instead of F.
  std::optional<double> delta;
  std::uint64_t seed = 1;
};

enum class Objective { MinimizeF, MinimizeCriticalFraction };

struct AEFParams {
  std::size_t min_block = 1;
  /// Defaults to max(min_block, floor(0.1 n)).
  std::optional<std::size_t> max_block;
  std::size_t epochs = 5000;
  Objective objective = Objective::MinimizeCriticalFraction;
  /// Used as delta for MinimizeCriticalFraction and for q_c reporting.
  double delta = 0.005;
  RRParams rr;
  /// Re-verify the permutation invariant after every epoch.
  bool check_invariants = false;
  /// Called after each epoch with (epoch index, current fitness).
  std::function<void(std::size_t, const SequenceFitness&)> on_epoch;
};

/// Epoch budget by network size: 5000 up to 1e5 nodes, 2500 up
/// to 1e6, 500 beyond.
std::size_t default_epochs(std::size_t n);
/// Reference preset: max_draws 50, window 1, 20 rounds, blocks in
/// [1, floor(0.1 n)], tiered epochs, delta 0.005.
AEFParams standard_preset(std::size_t n, std::uint64_t seed);

/// Consecutive blocks [starts[i], starts[i+1]) covering [0, n).
struct BlockPartition {
  std::vector<std::size_t> starts;
  std::size_t n = 0;

  static BlockPartition uniform(std::size_t n, std::size_t block_length);
  std::size_t size() const { return starts.size(); }
  std::size_t begin(std::size_t block) const { return starts[block]; }
  std::size_t end(std::size_t block) const { return block + 1 < starts.size() ? starts[block + 1] : n; }
};

/// One RR sweep over the whole sequence. Returns the rebuilt sequence when its
/// fitness (F, or q_c when params.delta is set) strictly improves on the
/// input, otherwise the input. The returned sequence carries its fitness.
NodeSequence rr_round(const Graph& graph, const NodeSequence& sequence, const RRParams& params, Rng& rng);

/// params.rounds RR rounds on one RNG stream seeded from params.seed.
NodeSequence rr_optimize(const Graph& graph, NodeSequence sequence, const RRParams& params);

/// Block whose removal first drives the LCC fraction to <= delta: removing
/// everything through the block reaches delta, stopping one block earlier
/// does not. Throws std::invalid_argument on a bad partition or delta.
std::size_t critical_subsequence(const Graph& graph, std::span<const NodeId> sequence, double delta,
                                 const BlockPartition& blocks);

/// Contribution of each block to F: block i covers removal counts
/// j in (begin_i, end_i], so the values sum to F exactly.
std::vector<double> block_fitness(const Graph& graph, std::span<const NodeId> sequence,
                                  const BlockPartition& blocks);

/// Evolutionary wrapper: per epoch draws a block length in [min_block,
/// max_block], partitions the sequence and applies block-restricted RR
/// (every block for MinimizeF, only the critical block otherwise).
/// `initial` defaults to the degree-descending order.
NodeSequence aef_optimize(const Graph& graph, const AEFParams& params,
                          std::optional<NodeSequence> initial = std::nullopt);

/// Block-restricted RR: `rounds` sweeps over positions [begin, end) with every
/// later position active, keeping a rebuilt block only if the block's share of
/// the objective strictly improves. Exposed for testing block independence.
void rr_block(const Graph& graph, std::vector<NodeId>& order, std::size_t begin, std::size_t end,
              const RRParams& params, Rng& rng);

XiMode parse_xi_mode(const std::string& name);
Objective parse_objective(const std::string& name);

}  // namespace pref
