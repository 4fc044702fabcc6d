#include "citetopo/graph.hpp"

#include <algorithm>
#include <cassert>

#include "citetopo/error.hpp"

namespace citetopo {

Adjacency::Adjacency(std::vector<std::size_t> offsets, std::vector<NodeId> targets)
    : offsets_(std::move(offsets)), targets_(std::move(targets)) {
  assert(!offsets_.empty() && offsets_.back() == targets_.size());
}

Adjacency Adjacency::from_pairs(std::size_t n, std::span<const std::pair<NodeId, NodeId>> pairs) {
  std::vector<std::size_t> offsets(n + 1, 0);
  for (auto [u, v] : pairs) ++offsets[u + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];

  std::vector<NodeId> targets(pairs.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (auto [u, v] : pairs) targets[cursor[u]++] = v;
  for (std::size_t i = 0; i < n; ++i)
    std::sort(targets.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
              targets.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]));
  return Adjacency(std::move(offsets), std::move(targets));
}

bool Adjacency::contains(NodeId u, NodeId v) const noexcept {
  auto row = (*this)[u];
  return std::binary_search(row.begin(), row.end(), v);
}

DirectedGraph::DirectedGraph(std::vector<Label> labels,
                             std::span<const std::pair<NodeId, NodeId>> edges)
    : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  out_ = Adjacency::from_pairs(n, edges);
  std::vector<std::pair<NodeId, NodeId>> reversed;
  reversed.reserve(edges.size());
  for (auto [u, v] : edges) reversed.emplace_back(v, u);
  in_ = Adjacency::from_pairs(n, reversed);
}

std::optional<NodeId> DirectedGraph::find(Label label) const noexcept {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<NodeId>(it - labels_.begin());
}

std::vector<std::pair<NodeId, NodeId>> DirectedGraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(num_edges());
  for_each_edge([&](NodeId u, NodeId v) { out.emplace_back(u, v); });
  return out;
}

DirectedGraph DirectedGraph::reversed() const {
  std::vector<std::pair<NodeId, NodeId>> rev;
  rev.reserve(num_edges());
  for_each_edge([&](NodeId u, NodeId v) { rev.emplace_back(v, u); });
  return DirectedGraph(labels_, rev);
}

UndirectedView undirected_view(const DirectedGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<NodeId> targets;
  targets.reserve(2 * g.num_edges());
  for (NodeId u = 0; u < n; ++u) {
    auto outs = g.out_neighbours(u);
    auto ins = g.in_neighbours(u);
    std::set_union(outs.begin(), outs.end(), ins.begin(), ins.end(), std::back_inserter(targets));
    offsets[u + 1] = targets.size();
  }
  UndirectedView view;
  view.num_edges = targets.size() / 2;
  view.adj = Adjacency(std::move(offsets), std::move(targets));
  return view;
}

DirectedGraph preprocess(const RawEdgeList& raw, PreprocessReport* report) {
  std::vector<RawEdge> edges;
  edges.reserve(raw.edges.size());
  std::size_t loops = 0;
  for (const RawEdge& e : raw.edges) {
    if (e.source == e.target) {
      ++loops;
      continue;
    }
    edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  const std::size_t before_dedup = edges.size();
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  if (edges.empty()) throw DataError("no usable edges");

  std::vector<Label> labels;
  labels.reserve(2 * edges.size());
  for (const RawEdge& e : edges) {
    labels.push_back(e.source);
    labels.push_back(e.target);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  auto index_of = [&](Label l) {
    return static_cast<NodeId>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
  };
  std::vector<std::pair<NodeId, NodeId>> dense;
  dense.reserve(edges.size());
  for (const RawEdge& e : edges) dense.emplace_back(index_of(e.source), index_of(e.target));

  if (report) {
    report->raw_edges = raw.edges.size();
    report->self_loops = loops;
    report->duplicate_edges = before_dedup - edges.size();
    std::size_t mentioned = raw.labels.size();
    report->dropped_labels = mentioned > labels.size() ? mentioned - labels.size() : 0;
  }
  return DirectedGraph(std::move(labels), dense);
}

RawEdgeList to_raw(const DirectedGraph& g) {
  RawEdgeList raw;
  raw.labels.assign(g.labels().begin(), g.labels().end());
  raw.edges.reserve(g.num_edges());
  g.for_each_edge([&](NodeId u, NodeId v) { raw.edges.push_back({g.label(u), g.label(v)}); });
  return raw;
}

DegreeTable degrees(const DirectedGraph& g) {
  const std::size_t n = g.num_nodes();
  DegreeTable t;
  t.in.resize(n);
  t.out.resize(n);
  t.total.resize(n);
  for (NodeId u = 0; u < n; ++u) {
    t.in[u] = static_cast<std::uint32_t>(g.in_degree(u));
    t.out[u] = static_cast<std::uint32_t>(g.out_degree(u));
    t.total[u] = t.in[u] + t.out[u];
  }
  return t;
}

const char* to_string(DegreeMode mode) noexcept {
  switch (mode) {
    case DegreeMode::in: return "in";
    case DegreeMode::out: return "out";
    default: return "total";
  }
}

}  // namespace citetopo
