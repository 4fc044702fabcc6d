#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "citetopo/graph.hpp"

namespace citetopo {

/// Reachable ordered pairs (self-pairs excluded) within each hop count.
/// Every realization curve starts at hop 0 with 0 pairs and is padded with
/// its final value up to the longest realization.
struct HopPlot {
  bool directed = true;
  std::vector<std::vector<double>> realizations;
  std::vector<double> mean_curve;  // mean fraction of finally reachable pairs
  std::vector<double> sem_curve;

  std::size_t num_hops() const noexcept { return mean_curve.size(); }
};

/// Fills mean_curve / sem_curve from the realization counts.
void summarize(HopPlot& hp);

/// counts[d] / counts.back().
std::vector<double> reachable_fractions(std::span<const double> counts);

struct AnfOptions {
  bool directed = true;
  int realizations = 100;
  int trials = 32;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::size_t memory_limit_bytes = std::size_t{8} << 30;
};

/// Approximate neighbourhood function: each node keeps `trials` 64-bit
/// Flajolet-Martin bitmasks, merged with its (out-)neighbours' masks once
/// per hop until no mask changes. Per-node reach estimates are
/// 2^mean(lowest zero bit) / 0.77351. The result depends only on `seed`.
HopPlot anf_hop_plot(const DirectedGraph& g, const AnfOptions& options);

/// Bytes of sketch state one ANF realization needs.
std::size_t anf_memory_bytes(std::size_t num_nodes, int trials) noexcept;

inline constexpr std::size_t kDefaultExactNodeCap = 10'000;

/// All-pairs BFS; a single exact realization.
/// Throws ResourceError when n exceeds `node_cap`.
HopPlot exact_hop_plot(const DirectedGraph& g, bool directed,
                       std::size_t node_cap = kDefaultExactNodeCap);

struct EffectiveDiameter {
  double mean = 0;
  double sem = 0;
  bool directed = true;
  std::vector<double> per_realization;
};

/// Hop count where the fraction curve first reaches `quantile`, linearly
/// interpolated between the bracketing integer hops.
double interpolate_crossing(std::span<const double> fractions, double quantile);

/// Crossing per realization, then mean and standard error over realizations.
EffectiveDiameter effective_diameter(const HopPlot& hp, double quantile = 0.9);

}  // namespace citetopo
