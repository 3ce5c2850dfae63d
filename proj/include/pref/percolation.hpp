#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pref/graph.hpp"

namespace pref {

/// G(q) = |LCC| / n sampled on a grid of removal fractions.
struct OrderParameterCurve {
  std::vector<double> q;
  std::vector<double> values;
};

/// First and second moments of a degree distribution.
struct DegreeMoments {
  double mean = 0.0;
  double second = 0.0;

  static DegreeMoments of(const Graph& graph);
};

/// Result of the random-removal threshold. `degenerate` is set when the input
/// has no giant component to destroy (ratio <= 2), in which case q_c = 0.
struct RemovalThreshold {
  double q_c = 0.0;
  bool degenerate = false;
};

/// Evenly spaced grid 0, step, 2 step, ..., 1.
std::vector<double> uniform_grid(double step);
/// One grid point per removal: j/n for j = 0..n.
std::vector<double> per_removal_grid(std::size_t n);

/// For each q removes the first floor(n q + 0.5) nodes of `sequence` and
/// reports the LCC fraction. Throws std::invalid_argument if the sequence is
/// not a permutation or the grid is unsorted / outside [0, 1].
OrderParameterCurve order_parameter(const Graph& graph, std::span<const NodeId> sequence,
                                    std::span<const double> grid);

/// Molloy-Reed: a giant component exists iff <k^2>/<k> > 2.
bool molloy_reed(const DegreeMoments& moments);

/// Moments after removing a random fraction q of nodes:
/// <k'> = (1-q)<k>, <k'^2> = (1-q)^2 <k^2> + q(1-q) <k>.
DegreeMoments post_removal_moments(const DegreeMoments& moments, double q);

/// q_c = 1 - 1/(<k^2>/<k> - 1), clamped to [0, 1].
RemovalThreshold random_removal_threshold(const DegreeMoments& moments);

/// lhs - rhs of the hub-removal threshold equation
///   q^((2-l)/(1-l)) - 2 = (2-l)/(3-l) * k_min * (q^((3-l)/(1-l)) - 1).
double hub_threshold_residual(double exponent, double k_min, double q);

/// Smallest root in (0, 1) of the hub-removal equation, located by a grid
/// scan and refined by bisection to machine precision. Exponent 3 is
/// evaluated at 3 - 1e-6 (removable singularity). nullopt when no sign change
/// exists in (0, 1).
std::optional<double> hub_removal_threshold(double exponent, double k_min);

}  // namespace pref
