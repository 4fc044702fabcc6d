#include "citetopo/degree_stats.hpp"

#include <Eigen/Core>
#include <random>

#include "citetopo/numeric.hpp"

namespace citetopo {

DegreeDistribution degree_distribution(const DegreeTable& table, DegreeMode mode) {
  DegreeDistribution d;
  d.mode = mode;
  for (std::uint32_t k : table.of(mode)) ++d.histogram[k];
  return d;
}

double power_law_gof_pvalue(const PowerLawFit& fit, bool discrete, std::size_t replicates,
                            std::uint64_t seed) {
  if (fit.degenerate || replicates == 0) return 0.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double inv = -1.0 / (fit.gamma - 1.0);
  std::size_t at_least = 0;
  std::vector<double> synthetic(fit.tail_n);
  for (std::size_t r = 0; r < replicates; ++r) {
    for (double& x : synthetic) {
      const double tail = std::pow(1.0 - unit(rng), inv);
      x = discrete ? std::floor((fit.kmin - 0.5) * tail + 0.5) : fit.kmin * tail;
    }
    const PowerLawFit refit = fit_power_law<double>(synthetic, fit.kmin);
    if (refit.degenerate || refit.ks_distance >= fit.ks_distance) ++at_least;
  }
  return static_cast<double>(at_least) / static_cast<double>(replicates);
}

KminPolicy parse_kmin_policy(std::string_view s) {
  if (s == "both") return KminPolicy::both;
  if (s == "10") return KminPolicy::k10;
  if (s == "25") return KminPolicy::k25;
  throw InvalidArgument("kmin policy must be one of both|10|25");
}

const char* to_string(KminPolicy p) noexcept {
  switch (p) {
    case KminPolicy::k10: return "10";
    case KminPolicy::k25: return "25";
    default: return "both";
  }
}

PowerLawSelection select_power_law(std::span<const std::uint32_t> degrees, KminPolicy policy,
                                   std::uint64_t seed, std::size_t gof_replicates) {
  std::vector<double> kmins;
  if (policy != KminPolicy::k25) kmins.push_back(10);
  if (policy != KminPolicy::k10) kmins.push_back(25);

  PowerLawSelection s;
  for (double kmin : kmins) {
    const bool any = std::any_of(degrees.begin(), degrees.end(),
                                 [&](std::uint32_t k) { return k >= kmin; });
    if (any) s.candidates.push_back(fit_power_law(degrees, kmin));
  }
  if (s.candidates.empty()) throw InvalidArgument("select_power_law: empty tail for every kmin");

  // Degenerate fits never win over a proper one.
  auto better = [](const PowerLawFit& a, const PowerLawFit& b) {
    if (a.degenerate != b.degenerate) return !a.degenerate;
    return a.ks_distance < b.ks_distance;
  };
  s.chosen = s.candidates.front();
  for (const auto& c : s.candidates)
    if (better(c, s.chosen)) s.chosen = c;
  s.gof_pvalue = power_law_gof_pvalue(s.chosen, true, gof_replicates, seed);
  s.plausible = !s.chosen.degenerate && s.gof_pvalue >= kPlausibilityThreshold;
  return s;
}

NeighbourConnectivityProfile neighbour_connectivity(const DirectedGraph& g, const UndirectedView& u,
                                                    DegreeMode mode) {
  const DegreeTable table = degrees(g);
  const auto k = table.of(mode);
  std::map<std::uint32_t, std::pair<double, std::size_t>> sums;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    auto& [sum, count] = sums[k[v]];
    for (NodeId w : u.neighbours(v)) sum += k[w];
    count += u.degree(v);
  }
  NeighbourConnectivityProfile profile;
  for (const auto& [degree, acc] : sums)
    if (acc.second > 0) profile[degree] = acc.first / static_cast<double>(acc.second);
  return profile;
}

NeighbourConnectivityProfile neighbour_connectivity(const DirectedGraph& g, DegreeMode mode) {
  return neighbour_connectivity(g, undirected_view(g), mode);
}

std::optional<double> degree_mixing_directed(const DirectedGraph& g, DegreeSide alpha,
                                             DegreeSide beta) {
  if (g.num_edges() < 2) return std::nullopt;
  auto side = [&](DegreeSide s, NodeId v) {
    return static_cast<double>(s == DegreeSide::in ? g.in_degree(v) : g.out_degree(v));
  };
  Eigen::ArrayXd source(static_cast<Eigen::Index>(g.num_edges()));
  Eigen::ArrayXd target(source.size());
  Eigen::Index i = 0;
  g.for_each_edge([&](NodeId u, NodeId v) {
    source(i) = side(alpha, u);
    target(i) = side(beta, v);
    ++i;
  });
  return pearson(source, target);
}

std::optional<double> degree_mixing_undirected(const UndirectedView& u) {
  if (u.num_edges < 2) return std::nullopt;
  const auto entries = static_cast<Eigen::Index>(2 * u.num_edges);
  Eigen::ArrayXd a(entries), b(entries);
  Eigen::Index i = 0;
  for (NodeId v = 0; v < u.num_nodes(); ++v)
    for (NodeId w : u.neighbours(v)) {
      a(i) = static_cast<double>(u.degree(v));
      b(i) = static_cast<double>(u.degree(w));
      ++i;
    }
  return pearson(a, b);
}

}  // namespace citetopo
