#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "citetopo/graph.hpp"

namespace citetopo {

/// Per-node clustering on the undirected view, where k is the view degree:
///   standard          C = 2t / (k(k-1))
///   delta-corrected   B = C k / h,  h = max degree
///   degree-corrected  D = t / omega
/// t counts linked neighbour pairs. omega bounds t given the neighbours'
/// degrees: floor(sum_j min(k_j - 1, k - 1) / 2). All three are 0 for k <= 1,
/// and D is 0 when omega is 0. B <= C <= D holds for every node.
struct ClusteringScores {
  std::vector<double> standard;
  std::vector<double> delta;
  std::vector<double> degree_corrected;
  std::vector<std::uint64_t> triangles;
  std::vector<std::uint64_t> omega;
  std::uint32_t max_degree = 0;
};

ClusteringScores clustering_all(const UndirectedView& u);
ClusteringScores clustering_all(const DirectedGraph& g);

/// Triangles through each node of the view.
std::vector<std::uint64_t> count_triangles(const UndirectedView& u);

enum class ClusteringVariant { standard, delta, degree_corrected };

const std::vector<double>& scores_of(const ClusteringScores& s, ClusteringVariant v) noexcept;
double mean_clustering(const ClusteringScores& s, ClusteringVariant v);

/// Pearson correlation of a score at the source and target of each directed edge.
std::optional<double> clustering_mixing(const DirectedGraph& g, const ClusteringScores& s,
                                        ClusteringVariant v);

struct ClusteringProfileRow {
  double mean_standard = 0;
  double mean_delta = 0;
  double mean_degree_corrected = 0;
  std::size_t nodes = 0;
};

/// Per view-degree means of C, B and D; degrees without nodes are absent.
using ClusteringProfile = std::map<std::uint32_t, ClusteringProfileRow>;

ClusteringProfile clustering_profile(const UndirectedView& u, const ClusteringScores& s);

}  // namespace citetopo
