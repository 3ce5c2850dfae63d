#include "pref/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pref/sequence.hpp"

namespace pref {

DegreeMoments DegreeMoments::of(const Graph& graph) {
  DegreeMoments m;
  const std::size_t n = graph.num_nodes();
  if (n == 0) return m;
  for (NodeId v = 0; v < n; ++v) {
    auto k = static_cast<double>(graph.degree(v));
    m.mean += k;
    m.second += k * k;
  }
  m.mean /= static_cast<double>(n);
  m.second /= static_cast<double>(n);
  return m;
}

std::vector<double> uniform_grid(double step) {
  if (!(step > 0.0) || step > 1.0) throw std::invalid_argument("grid step must lie in (0, 1]");
  const auto points = static_cast<std::size_t>(std::llround(1.0 / step));
  std::vector<double> grid(points + 1);
  for (std::size_t i = 0; i <= points; ++i) grid[i] = std::min(1.0, static_cast<double>(i) * step);
  grid.back() = 1.0;
  return grid;
}

std::vector<double> per_removal_grid(std::size_t n) {
  std::vector<double> grid(n + 1);
  for (std::size_t j = 0; j <= n; ++j) grid[j] = n == 0 ? 0.0 : static_cast<double>(j) / static_cast<double>(n);
  return grid;
}

OrderParameterCurve order_parameter(const Graph& graph, std::span<const NodeId> sequence,
                                    std::span<const double> grid) {
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("q-grid must be sorted ascending");
  if (!grid.empty() && (grid.front() < 0.0 || grid.back() > 1.0)) {
    throw std::invalid_argument("q-grid values must lie in [0, 1]");
  }
  auto profile = removal_profile(graph, sequence);
  const auto n = static_cast<double>(graph.num_nodes());
  OrderParameterCurve curve;
  curve.q.assign(grid.begin(), grid.end());
  curve.values.reserve(grid.size());
  for (double q : grid) {
    auto removed = static_cast<std::size_t>(std::floor(n * q + 0.5));
    removed = std::min(removed, graph.num_nodes());
    curve.values.push_back(n == 0 ? 0.0 : static_cast<double>(profile[removed]) / n);
  }
  return curve;
}

bool molloy_reed(const DegreeMoments& moments) {
  if (!(moments.mean > 0.0)) throw std::invalid_argument("Molloy-Reed ratio needs a positive mean degree");
  return moments.second / moments.mean > 2.0;
}

DegreeMoments post_removal_moments(const DegreeMoments& moments, double q) {
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("removal fraction must lie in [0, 1]");
  const double keep = 1.0 - q;
  return {keep * moments.mean, keep * keep * moments.second + q * keep * moments.mean};
}

RemovalThreshold random_removal_threshold(const DegreeMoments& moments) {
  if (!molloy_reed(moments)) return {0.0, true};
  const double ratio = moments.second / moments.mean;
  return {std::clamp(1.0 - 1.0 / (ratio - 1.0), 0.0, 1.0), false};
}

namespace {

constexpr double kSingularityOffset = 1e-6;
constexpr int kScanPoints = 10000;

double effective_exponent(double exponent) {
  return std::abs(exponent - 3.0) < kSingularityOffset ? 3.0 - kSingularityOffset : exponent;
}

}  // namespace

double hub_threshold_residual(double exponent, double k_min, double q) {
  const double l = effective_exponent(exponent);
  const double lhs = std::pow(q, (2.0 - l) / (1.0 - l)) - 2.0;
  const double rhs = (2.0 - l) / (3.0 - l) * k_min * (std::pow(q, (3.0 - l) / (1.0 - l)) - 1.0);
  return lhs - rhs;
}

std::optional<double> hub_removal_threshold(double exponent, double k_min) {
  if (!(exponent > 2.0)) throw std::invalid_argument("hub-removal threshold needs exponent > 2");
  if (!(k_min >= 1.0)) throw std::invalid_argument("hub-removal threshold needs k_min >= 1");
  auto f = [&](double q) { return hub_threshold_residual(exponent, k_min, q); };

  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  bool bracketed = false;
  double prev_q = 1.0 / kScanPoints;
  double prev_f = f(prev_q);
  for (int i = 2; i <= kScanPoints; ++i) {
    double q = static_cast<double>(i) / kScanPoints;
    if (i == kScanPoints) q = std::nextafter(1.0, 0.0);
    double fq = f(q);
    if (prev_f == 0.0) return prev_q;
    if ((prev_f < 0.0) != (fq < 0.0)) {
      lo = prev_q;
      hi = q;
      f_lo = prev_f;
      bracketed = true;
      break;
    }
    prev_q = q;
    prev_f = fq;
  }
  if (!bracketed) return std::nullopt;

  while (true) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
    }
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

}  // namespace pref
