#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "citetopo/graph.hpp"

namespace testsupport {

using citetopo::DirectedGraph;
using citetopo::Label;
using citetopo::NodeId;
using citetopo::RawEdge;
using citetopo::RawEdgeList;

inline RawEdgeList raw_from(std::vector<std::pair<Label, Label>> pairs) {
  RawEdgeList raw;
  std::set<Label> labels;
  for (auto [s, t] : pairs) {
    raw.edges.push_back({s, t});
    labels.insert(s);
    labels.insert(t);
  }
  raw.labels.assign(labels.begin(), labels.end());
  return raw;
}

inline DirectedGraph graph_from(std::vector<std::pair<Label, Label>> pairs) {
  return citetopo::preprocess(raw_from(std::move(pairs)));
}

/// Edge multiset over labels 0..max_label, loops and duplicates included.
inline RawEdgeList random_raw(std::mt19937_64& rng, Label max_label, std::size_t num_edges) {
  std::uniform_int_distribution<Label> pick(0, max_label);
  std::vector<std::pair<Label, Label>> pairs;
  for (std::size_t i = 0; i < num_edges; ++i) pairs.emplace_back(pick(rng), pick(rng));
  return raw_from(pairs);
}

/// G(n, p) digraph on labels 0..n-1 with at least one edge.
inline DirectedGraph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Label, Label>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && coin(rng)) pairs.emplace_back(u, v);
  if (pairs.empty()) pairs.emplace_back(0, 1);
  return graph_from(pairs);
}

/// Edges only from higher to lower label, like a citation network.
inline DirectedGraph random_dag(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Label, Label>> pairs;
  for (int u = 1; u < n; ++u)
    for (int v = 0; v < u; ++v)
      if (coin(rng)) pairs.emplace_back(u, v);
  if (pairs.empty()) pairs.emplace_back(1, 0);
  return graph_from(pairs);
}

using BoolMatrix = std::vector<std::vector<bool>>;

inline BoolMatrix directed_matrix(const DirectedGraph& g) {
  const auto n = g.num_nodes();
  BoolMatrix a(n, std::vector<bool>(n, false));
  for (auto [u, v] : g.edges()) a[u][v] = true;
  return a;
}

inline BoolMatrix undirected_matrix(const DirectedGraph& g) {
  auto a = directed_matrix(g);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i][j]) a[j][i] = true;
  return a;
}

inline std::vector<int> row_degrees(const BoolMatrix& a) {
  std::vector<int> k(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (bool b : a[i]) k[i] += b;
  return k;
}

/// Textbook two-pass Pearson in long double; nullopt on zero variance.
inline std::optional<double> textbook_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<long double>(x.size());
  if (x.size() < 2) return std::nullopt;
  auto constant = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
  };
  if (constant(x) || constant(y)) return std::nullopt;
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

}  // namespace testsupport
