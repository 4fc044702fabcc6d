#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "citetopo/error.hpp"
#include "citetopo/graph.hpp"

namespace citetopo {

/// Degree histogram of one mode; counts sum to n.
struct DegreeDistribution {
  DegreeMode mode = DegreeMode::total;
  std::map<std::uint32_t, std::size_t> histogram;
};

DegreeDistribution degree_distribution(const DegreeTable& table, DegreeMode mode);

struct PowerLawFit {
  double kmin = 0;
  double gamma = 0;  // +inf when degenerate
  std::size_t tail_n = 0;
  double ks_distance = 0;
  bool degenerate = false;  // every tail value equals kmin
};

namespace detail {

template <typename T>
double ks_distance_sorted(std::span<const T> tail, double kmin, double gamma) {
  // Empirical P(X >= x) against (x / kmin)^(1 - gamma) at each distinct value.
  const double n = static_cast<double>(tail.size());
  double d = 0;
  for (std::size_t i = 0; i < tail.size();) {
    const double x = static_cast<double>(tail[i]);
    const double empirical = static_cast<double>(tail.size() - i) / n;
    const double fitted = std::pow(x / kmin, 1.0 - gamma);
    d = std::max(d, std::abs(empirical - fitted));
    std::size_t j = i;
    while (j < tail.size() && tail[j] == tail[i]) ++j;
    i = j;
  }
  return d;
}

}  // namespace detail

/// Maximum-likelihood power-law exponent of the tail x >= kmin:
/// gamma = 1 + tail_n / sum(ln(x / kmin)). Works for integer degrees and for
/// real-valued samples alike.
template <typename T>
PowerLawFit fit_power_law(std::span<const T> sample, double kmin) {
  if (!(kmin > 0)) throw InvalidArgument("fit_power_law: kmin must be positive");
  std::vector<T> tail;
  for (const T& x : sample)
    if (static_cast<double>(x) >= kmin) tail.push_back(x);
  if (tail.empty()) throw InvalidArgument("fit_power_law: no sample value >= kmin");
  std::sort(tail.begin(), tail.end());

  PowerLawFit fit;
  fit.kmin = kmin;
  fit.tail_n = tail.size();
  double log_sum = 0;
  for (const T& x : tail) log_sum += std::log(static_cast<double>(x) / kmin);
  if (log_sum <= 0) {
    fit.degenerate = true;
    fit.gamma = std::numeric_limits<double>::infinity();
    fit.ks_distance = 0;
    return fit;
  }
  fit.gamma = 1.0 + static_cast<double>(fit.tail_n) / log_sum;
  fit.ks_distance = detail::ks_distance_sorted<T>(tail, kmin, fit.gamma);
  return fit;
}

/// Bootstrap goodness-of-fit: the fraction of synthetic tails, drawn from the
/// fitted law and refitted at the same kmin, whose KS distance is at least
/// the observed one. `discrete` draws integer samples.
double power_law_gof_pvalue(const PowerLawFit& fit, bool discrete, std::size_t replicates,
                            std::uint64_t seed);

enum class KminPolicy { both, k10, k25 };

KminPolicy parse_kmin_policy(std::string_view s);
const char* to_string(KminPolicy p) noexcept;

/// Fits at each candidate kmin and keeps the one with the smaller KS
/// distance. A fit is implausible when its bootstrap p-value is below 0.1.
struct PowerLawSelection {
  std::vector<PowerLawFit> candidates;
  PowerLawFit chosen;
  double gof_pvalue = 0;
  bool plausible = false;
};

inline constexpr double kPlausibilityThreshold = 0.1;

PowerLawSelection select_power_law(std::span<const std::uint32_t> degrees, KminPolicy policy,
                                   std::uint64_t seed, std::size_t gof_replicates = 100);

/// Mean same-mode degree of the undirected neighbours of all nodes with a
/// given degree, pooled over those nodes.
using NeighbourConnectivityProfile = std::map<std::uint32_t, double>;

NeighbourConnectivityProfile neighbour_connectivity(const DirectedGraph& g, const UndirectedView& u,
                                                    DegreeMode mode);
NeighbourConnectivityProfile neighbour_connectivity(const DirectedGraph& g, DegreeMode mode);

enum class DegreeSide { in, out };

/// Pearson correlation over the m directed edges of the source's alpha-degree
/// and the target's beta-degree. nullopt when undefined.
std::optional<double> degree_mixing_directed(const DirectedGraph& g, DegreeSide alpha,
                                             DegreeSide beta);

/// Assortativity of the undirected view, each edge counted in both orientations.
std::optional<double> degree_mixing_undirected(const UndirectedView& u);

}  // namespace citetopo
