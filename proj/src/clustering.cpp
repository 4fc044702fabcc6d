#include "citetopo/clustering.hpp"

#include <Eigen/Core>
#include <algorithm>

#include "citetopo/numeric.hpp"

namespace citetopo {

std::vector<std::uint64_t> count_triangles(const UndirectedView& u) {
  const std::size_t n = u.num_nodes();
  // Orient every edge towards the endpoint of higher (degree, id); each
  // triangle is then found exactly once from its lowest-ranked corner.
  auto ranks_below = [&](NodeId a, NodeId b) {
    const auto da = u.degree(a), db = u.degree(b);
    return da < db || (da == db && a < b);
  };
  std::vector<std::pair<NodeId, NodeId>> forward;
  forward.reserve(u.num_edges);
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b : u.neighbours(a))
      if (ranks_below(a, b)) forward.emplace_back(a, b);
  const Adjacency up = Adjacency::from_pairs(n, forward);

  std::vector<std::uint64_t> t(n, 0);
  std::vector<char> mark(n, 0);
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b : up[a]) mark[b] = 1;
    for (NodeId b : up[a])
      for (NodeId c : up[b])
        if (mark[c]) {
          ++t[a];
          ++t[b];
          ++t[c];
        }
    for (NodeId b : up[a]) mark[b] = 0;
  }
  return t;
}

ClusteringScores clustering_all(const UndirectedView& u) {
  const std::size_t n = u.num_nodes();
  ClusteringScores s;
  s.triangles = count_triangles(u);
  s.omega.assign(n, 0);
  s.standard.assign(n, 0.0);
  s.delta.assign(n, 0.0);
  s.degree_corrected.assign(n, 0.0);
  for (NodeId v = 0; v < n; ++v)
    s.max_degree = std::max(s.max_degree, static_cast<std::uint32_t>(u.degree(v)));

  for (NodeId v = 0; v < n; ++v) {
    const std::uint64_t k = u.degree(v);
    if (k <= 1) continue;
    std::uint64_t bound = 0;
    for (NodeId w : u.neighbours(v)) bound += std::min<std::uint64_t>(u.degree(w) - 1, k - 1);
    s.omega[v] = bound / 2;

    const double t = static_cast<double>(s.triangles[v]);
    const double c = 2.0 * t / static_cast<double>(k * (k - 1));
    s.standard[v] = c;
    // C k / h, written so that B <= C survives rounding.
    s.delta[v] = 2.0 * t / static_cast<double>((k - 1) * s.max_degree);
    s.degree_corrected[v] = s.omega[v] ? t / static_cast<double>(s.omega[v]) : 0.0;
  }
  return s;
}

ClusteringScores clustering_all(const DirectedGraph& g) { return clustering_all(undirected_view(g)); }

const std::vector<double>& scores_of(const ClusteringScores& s, ClusteringVariant v) noexcept {
  switch (v) {
    case ClusteringVariant::delta: return s.delta;
    case ClusteringVariant::degree_corrected: return s.degree_corrected;
    default: return s.standard;
  }
}

double mean_clustering(const ClusteringScores& s, ClusteringVariant v) {
  const auto& x = scores_of(s, v);
  if (x.empty()) return 0.0;
  return Eigen::Map<const Eigen::ArrayXd>(x.data(), static_cast<Eigen::Index>(x.size())).mean();
}

std::optional<double> clustering_mixing(const DirectedGraph& g, const ClusteringScores& s,
                                        ClusteringVariant v) {
  const auto& x = scores_of(s, v);
  Eigen::ArrayXd source(static_cast<Eigen::Index>(g.num_edges()));
  Eigen::ArrayXd target(source.size());
  Eigen::Index i = 0;
  g.for_each_edge([&](NodeId a, NodeId b) {
    source(i) = x[a];
    target(i) = x[b];
    ++i;
  });
  return pearson(source, target);
}

ClusteringProfile clustering_profile(const UndirectedView& u, const ClusteringScores& s) {
  ClusteringProfile profile;
  for (NodeId v = 0; v < u.num_nodes(); ++v) {
    auto& row = profile[static_cast<std::uint32_t>(u.degree(v))];
    row.mean_standard += s.standard[v];
    row.mean_delta += s.delta[v];
    row.mean_degree_corrected += s.degree_corrected[v];
    ++row.nodes;
  }
  for (auto& [k, row] : profile) {
    const double c = static_cast<double>(row.nodes);
    row.mean_standard /= c;
    row.mean_delta /= c;
    row.mean_degree_corrected /= c;
  }
  return profile;
}

}  // namespace citetopo
