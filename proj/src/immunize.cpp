#include "pref/immunize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pref {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Union-find without path compression so every activation can be undone.
// Block-restricted RR rebuilds the same block many times against a fixed
// context, which is a rollback to a mark rather than a rebuild.
class RollbackForest {
 public:
  explicit RollbackForest(std::size_t n) : parent_(n), size_(n, 0), active_(n, 0) {
    for (NodeId v = 0; v < n; ++v) parent_[v] = v;
  }

  std::size_t mark() const { return history_.size(); }
  std::size_t largest() const { return largest_; }
  bool is_active(NodeId v) const { return active_[v] != 0; }
  std::size_t size_of_root(NodeId root) const { return size_[root]; }

  NodeId find(NodeId v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }

  void activate(const Graph& graph, NodeId node) {
    history_.push_back({Op::Activate, node, 0, largest_});
    active_[node] = 1;
    size_[node] = 1;
    NodeId root = node;
    for (NodeId nb : graph.neighbors(node)) {
      if (!active_[nb]) continue;
      NodeId other = find(nb);
      if (other == root) continue;
      if (size_[other] > size_[root]) std::swap(other, root);
      parent_[other] = root;
      size_[root] += size_[other];
      history_.push_back({Op::Union, other, root, 0});
    }
    largest_ = std::max(largest_, size_[root]);
  }

  void rollback(std::size_t to) {
    while (history_.size() > to) {
      const Record r = history_.back();
      history_.pop_back();
      if (r.op == Op::Union) {
        size_[r.root] -= size_[r.node];
        parent_[r.node] = r.node;
      } else {
        active_[r.node] = 0;
        size_[r.node] = 0;
        largest_ = r.prev_largest;
      }
    }
  }

  void reset() { rollback(0); }

 private:
  enum class Op : unsigned char { Activate, Union };
  struct Record {
    Op op;
    NodeId node;
    NodeId root;
    std::size_t prev_largest;
  };

  std::vector<NodeId> parent_;
  std::vector<std::size_t> size_;
  std::vector<char> active_;
  std::vector<Record> history_;
  std::size_t largest_ = 0;
};

// Objective share of one block [begin, end) given everything after it active.
struct BlockScore {
  // sum of LCC_j for removal counts j in (begin, end]
  std::uint64_t lcc_sum = 0;
  // smallest removal count j in [begin, end] with LCC_j <= delta n, or kNone
  std::size_t critical = kNone;
};

bool improves(const BlockScore& candidate, const BlockScore& current, bool use_critical) {
  if (use_critical) return candidate.critical < current.critical;
  return candidate.lcc_sum < current.lcc_sum;
}

class BlockOptimizer {
 public:
  BlockOptimizer(const Graph& graph, const RRParams& params)
      : graph_(graph),
        params_(params),
        forest_(graph.num_nodes()),
        stamp_(graph.num_nodes(), 0),
        position_(graph.num_nodes(), 0),
        limit_(params.delta ? *params.delta * static_cast<double>(graph.num_nodes()) : -1.0) {}

  RollbackForest& forest() { return forest_; }

  // Activates `order[begin, end)` last-to-first, scoring the block.
  BlockScore score(std::span<const NodeId> order, std::size_t begin, std::size_t end) {
    BlockScore s = context_score(end);
    for (std::size_t p = end; p-- > begin;) {
      forest_.activate(graph_, order[p]);
      record(s, p, begin);
    }
    return s;
  }

  // Runs params.rounds block-restricted RR rounds on order[begin, end) with
  // the forest holding exactly positions >= end. Leaves the forest as found.
  void optimize(std::vector<NodeId>& order, std::size_t begin, std::size_t end, Rng& rng) {
    const std::size_t base = forest_.mark();
    BlockScore current = score(order, begin, end);
    forest_.rollback(base);
    std::vector<NodeId> work;
    for (std::size_t round = 0; round < params_.rounds; ++round) {
      work.assign(order.begin() + static_cast<std::ptrdiff_t>(begin),
                  order.begin() + static_cast<std::ptrdiff_t>(end));
      BlockScore candidate = sweep(work, begin, end, rng);
      forest_.rollback(base);
      if (improves(candidate, current, params_.delta.has_value())) {
        std::copy(work.begin(), work.end(), order.begin() + static_cast<std::ptrdiff_t>(begin));
        current = candidate;
      }
    }
  }

  // One RR sweep rebuilding `work` (the block, global positions begin..end-1)
  // from the back. Leaves the block activated.
  BlockScore sweep(std::vector<NodeId>& work, std::size_t begin, std::size_t end, Rng& rng) {
    const std::size_t n = graph_.num_nodes();
    const auto draws = uniform_int<std::size_t>(rng, 1, std::max<std::size_t>(1, params_.max_draws));
    const double r = params_.max_window * (1.0 - uniform_real(rng));
    const auto reach = static_cast<std::size_t>(std::floor(r * static_cast<double>(n)));
    for (std::size_t i = 0; i < work.size(); ++i) position_[work[i]] = i;

    BlockScore s = context_score(end);
    for (std::size_t p = end; p-- > begin;) {
      const std::size_t hi = p - begin;
      const std::size_t lo = p >= begin + reach ? p - begin - reach : 0;
      NodeId chosen = pick(work, lo, hi, draws, rng);
      const std::size_t from = position_[chosen];
      std::swap(work[from], work[hi]);
      position_[work[from]] = from;
      position_[work[hi]] = hi;
      forest_.activate(graph_, chosen);
      record(s, p, begin);
    }
    return s;
  }

 private:
  BlockScore context_score(std::size_t end) const {
    BlockScore s;
    s.lcc_sum = forest_.largest();
    if (static_cast<double>(forest_.largest()) <= limit_) s.critical = end;
    return s;
  }

  // After activating position p the state is "positions >= p active", LCC_p.
  void record(BlockScore& s, std::size_t p, std::size_t begin) const {
    const std::size_t lcc = forest_.largest();
    if (p > begin) s.lcc_sum += lcc;
    if (static_cast<double>(lcc) <= limit_) s.critical = p;
  }

  double xi(NodeId v) {
    roots_.clear();
    for (NodeId nb : graph_.neighbors(v)) {
      if (!forest_.is_active(nb)) continue;
      NodeId root = forest_.find(nb);
      if (std::find(roots_.begin(), roots_.end(), root) == roots_.end()) roots_.push_back(root);
    }
    double value = 0.0;
    if (params_.xi == XiMode::Sum) {
      for (NodeId root : roots_) value += static_cast<double>(forest_.size_of_root(root));
    } else {
      // log of the product; the empty product is 1
      for (NodeId root : roots_) value += std::log(static_cast<double>(forest_.size_of_root(root)));
    }
    return value;
  }

  NodeId pick(const std::vector<NodeId>& work, std::size_t lo, std::size_t hi, std::size_t draws, Rng& rng) {
    ++epoch_;
    if (epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    NodeId best = work[hi];
    double best_xi = std::numeric_limits<double>::infinity();
    std::size_t ties = 0;
    for (std::size_t d = 0; d < draws; ++d) {
      NodeId v = work[uniform_int<std::size_t>(rng, lo, hi)];
      if (stamp_[v] == epoch_) continue;
      stamp_[v] = epoch_;
      double value = xi(v);
      if (value < best_xi) {
        best_xi = value;
        best = v;
        ties = 1;
      } else if (value == best_xi) {
        ++ties;
        if (uniform_int<std::size_t>(rng, 1, ties) == 1) best = v;
      }
    }
    return best;
  }

  const Graph& graph_;
  RRParams params_;
  RollbackForest forest_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<std::size_t> position_;
  std::vector<NodeId> roots_;
  double limit_;
};

void validate(const RRParams& params) {
  if (params.max_draws < 1) throw std::invalid_argument("max_draws must be >= 1");
  if (!(params.max_window > 0.0) || params.max_window > 1.0) {
    throw std::invalid_argument("max_window must lie in (0, 1]");
  }
  if (params.rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  if (params.delta && (*params.delta < 0.0 || *params.delta > 1.0)) {
    throw std::invalid_argument("delta must lie in [0, 1]");
  }
}

std::size_t critical_block_from_profile(std::span<const std::size_t> profile, double delta,
                                        const BlockPartition& blocks) {
  const double limit = delta * static_cast<double>(blocks.n);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (static_cast<double>(profile[blocks.end(b)]) <= limit) return b;
  }
  return blocks.size() - 1;
}

}  // namespace

std::size_t default_epochs(std::size_t n) {
  if (n <= 100000) return 5000;
  if (n <= 1000000) return 2500;
  return 500;
}

AEFParams standard_preset(std::size_t n, std::uint64_t seed) {
  AEFParams p;
  p.min_block = 1;
  p.max_block = std::max<std::size_t>(1, n / 10);
  p.epochs = default_epochs(n);
  p.objective = Objective::MinimizeCriticalFraction;
  p.delta = 0.005;
  p.rr.max_draws = 50;
  p.rr.max_window = 1.0;
  p.rr.rounds = 20;
  p.rr.xi = XiMode::Sum;
  p.rr.seed = seed;
  return p;
}

BlockPartition BlockPartition::uniform(std::size_t n, std::size_t block_length) {
  if (block_length == 0) throw std::invalid_argument("block length must be >= 1");
  BlockPartition p;
  p.n = n;
  for (std::size_t s = 0; s < n; s += block_length) p.starts.push_back(s);
  if (p.starts.empty()) p.starts.push_back(0);
  return p;
}

NodeSequence rr_round(const Graph& graph, const NodeSequence& sequence, const RRParams& params, Rng& rng) {
  validate(params);
  const std::size_t n = graph.num_nodes();
  require_permutation(sequence.order, n);
  BlockOptimizer opt(graph, params);
  BlockScore current = opt.score(sequence.order, 0, n);
  opt.forest().reset();
  std::vector<NodeId> work = sequence.order;
  BlockScore candidate = opt.sweep(work, 0, n, rng);
  const bool accept = improves(candidate, current, params.delta.has_value());
  NodeSequence out{accept ? std::move(work) : sequence.order, std::nullopt};
  out.fitness = evaluate_sequence(graph, out.order, params.delta);
  return out;
}

NodeSequence rr_optimize(const Graph& graph, NodeSequence sequence, const RRParams& params) {
  validate(params);
  Rng rng(params.seed);
  for (std::size_t t = 0; t < params.rounds; ++t) sequence = rr_round(graph, sequence, params, rng);
  if (!sequence.fitness) sequence.fitness = evaluate_sequence(graph, sequence.order, params.delta);
  return sequence;
}

void rr_block(const Graph& graph, std::vector<NodeId>& order, std::size_t begin, std::size_t end,
              const RRParams& params, Rng& rng) {
  validate(params);
  require_permutation(order, graph.num_nodes());
  if (begin >= end || end > order.size()) throw std::invalid_argument("invalid block range");
  BlockOptimizer opt(graph, params);
  for (std::size_t p = order.size(); p-- > end;) opt.forest().activate(graph, order[p]);
  opt.optimize(order, begin, end, rng);
}

std::size_t critical_subsequence(const Graph& graph, std::span<const NodeId> sequence, double delta,
                                 const BlockPartition& blocks) {
  if (!(delta > 0.0) || delta > 1.0) throw std::invalid_argument("delta must lie in (0, 1]");
  if (blocks.n != sequence.size() || blocks.starts.empty() || blocks.starts.front() != 0 ||
      !std::is_sorted(blocks.starts.begin(), blocks.starts.end()) ||
      std::adjacent_find(blocks.starts.begin(), blocks.starts.end()) != blocks.starts.end()) {
    throw std::invalid_argument("block partition does not cover the sequence");
  }
  auto profile = removal_profile(graph, sequence);
  return critical_block_from_profile(profile, delta, blocks);
}

std::vector<double> block_fitness(const Graph& graph, std::span<const NodeId> sequence,
                                  const BlockPartition& blocks) {
  auto profile = removal_profile(graph, sequence);
  const double scale = static_cast<double>(blocks.n) * static_cast<double>(blocks.n);
  std::vector<double> out(blocks.size(), 0.0);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::uint64_t sum = 0;
    for (std::size_t j = blocks.begin(b) + 1; j <= blocks.end(b); ++j) sum += profile[j];
    out[b] = static_cast<double>(sum) / scale;
  }
  return out;
}

NodeSequence aef_optimize(const Graph& graph, const AEFParams& params, std::optional<NodeSequence> initial) {
  const std::size_t n = graph.num_nodes();
  const std::size_t max_block = params.max_block.value_or(std::max(params.min_block, n / 10));
  if (params.min_block < 1 || params.min_block > max_block || max_block > std::max<std::size_t>(n, 1)) {
    throw std::invalid_argument("block bounds must satisfy 1 <= min_block <= max_block <= n");
  }
  RRParams rr = params.rr;
  const bool critical_mode = params.objective == Objective::MinimizeCriticalFraction;
  rr.delta = critical_mode ? std::optional<double>(params.delta) : std::nullopt;
  validate(rr);

  NodeSequence seq = initial ? std::move(*initial) : NodeSequence{degree_descending_order(graph), std::nullopt};
  require_permutation(seq.order, n);
  if (n == 0) return seq;

  Rng rng(rr.seed);
  BlockOptimizer opt(graph, rr);
  for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
    const auto length = uniform_int<std::size_t>(rng, params.min_block, max_block);
    const auto blocks = BlockPartition::uniform(n, length);
    opt.forest().reset();
    if (critical_mode) {
      auto profile = removal_profile(graph, seq.order);
      const std::size_t c = critical_block_from_profile(profile, params.delta, blocks);
      for (std::size_t p = n; p-- > blocks.end(c);) opt.forest().activate(graph, seq.order[p]);
      opt.optimize(seq.order, blocks.begin(c), blocks.end(c), rng);
    } else {
      // Block shares of F only depend on the set of later nodes, so blocks
      // are processed back to front against a growing context.
      for (std::size_t b = blocks.size(); b-- > 0;) {
        opt.optimize(seq.order, blocks.begin(b), blocks.end(b), rng);
        for (std::size_t p = blocks.end(b); p-- > blocks.begin(b);) opt.forest().activate(graph, seq.order[p]);
      }
    }
    if (params.check_invariants) require_permutation(seq.order, n);
    if (params.on_epoch) params.on_epoch(epoch, evaluate_sequence(graph, seq.order, params.delta));
  }
  seq.fitness = evaluate_sequence(graph, seq.order, params.delta);
  return seq;
}

XiMode parse_xi_mode(const std::string& name) {
  if (name == "sum") return XiMode::Sum;
  if (name == "product") return XiMode::Product;
  throw std::invalid_argument("unknown xi mode '" + name + "' (expected sum or product)");
}

Objective parse_objective(const std::string& name) {
  if (name == "F" || name == "f" || name == "fitness") return Objective::MinimizeF;
  if (name == "qc" || name == "q_c" || name == "critical") return Objective::MinimizeCriticalFraction;
  throw std::invalid_argument("unknown objective '" + name + "' (expected F or qc)");
}

}  // namespace pref
