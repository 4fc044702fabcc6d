#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace citetopo {

/// Dense node index, 0..n-1 after preprocessing.
using NodeId = std::uint32_t;
/// Node label as it appears in the input file.
using Label = std::int64_t;

struct RawEdge {
  Label source;
  Label target;

  friend auto operator<=>(const RawEdge&, const RawEdge&) = default;
};

/// Edges exactly as parsed: duplicates and self-loops preserved.
struct RawEdgeList {
  std::vector<RawEdge> edges;
  std::vector<Label> labels;  // sorted, unique
};

/// Compressed sparse row adjacency with sorted neighbour lists.
class Adjacency {
 public:
  Adjacency() : offsets_{0} {}
  Adjacency(std::vector<std::size_t> offsets, std::vector<NodeId> targets);

  /// Builds from (row, column) pairs; pairs need not be sorted.
  static Adjacency from_pairs(std::size_t n, std::span<const std::pair<NodeId, NodeId>> pairs);

  std::size_t num_nodes() const noexcept { return offsets_.size() - 1; }
  std::size_t num_entries() const noexcept { return targets_.size(); }

  std::span<const NodeId> operator[](NodeId u) const noexcept {
    return {targets_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
  }
  std::size_t degree(NodeId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }
  bool contains(NodeId u, NodeId v) const noexcept;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

/// Simple directed graph: no self-loops, no parallel edges, no isolated nodes.
/// Immutable after construction and safe to share across threads.
class DirectedGraph {
 public:
  /// `labels` must be sorted and unique; `edges` must be unique and loop-free
  /// and must touch every node.
  DirectedGraph(std::vector<Label> labels, std::span<const std::pair<NodeId, NodeId>> edges);

  std::size_t num_nodes() const noexcept { return labels_.size(); }
  std::size_t num_edges() const noexcept { return out_.num_entries(); }

  std::span<const NodeId> out_neighbours(NodeId u) const noexcept { return out_[u]; }
  std::span<const NodeId> in_neighbours(NodeId u) const noexcept { return in_[u]; }
  std::size_t out_degree(NodeId u) const noexcept { return out_.degree(u); }
  std::size_t in_degree(NodeId u) const noexcept { return in_.degree(u); }
  std::size_t degree(NodeId u) const noexcept { return out_degree(u) + in_degree(u); }
  bool has_edge(NodeId u, NodeId v) const noexcept { return out_.contains(u, v); }

  const Adjacency& out_adjacency() const noexcept { return out_; }
  const Adjacency& in_adjacency() const noexcept { return in_; }

  Label label(NodeId u) const noexcept { return labels_[u]; }
  std::span<const Label> labels() const noexcept { return labels_; }
  std::optional<NodeId> find(Label label) const noexcept;

  /// Edges in (source, target) lexicographic order.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  /// The same graph with every edge reversed.
  DirectedGraph reversed() const;

  template <typename F>
  void for_each_edge(F&& f) const {
    for (NodeId u = 0; u < num_nodes(); ++u)
      for (NodeId v : out_[u]) f(u, v);
  }

 private:
  std::vector<Label> labels_;
  Adjacency out_;
  Adjacency in_;
};

/// Direction-blind view: reciprocal pairs merge into one undirected edge.
struct UndirectedView {
  Adjacency adj;
  std::size_t num_edges = 0;

  std::size_t num_nodes() const noexcept { return adj.num_nodes(); }
  std::size_t degree(NodeId u) const noexcept { return adj.degree(u); }
  std::span<const NodeId> neighbours(NodeId u) const noexcept { return adj[u]; }
};

UndirectedView undirected_view(const DirectedGraph& g);

struct PreprocessReport {
  std::size_t raw_edges = 0;
  std::size_t self_loops = 0;
  std::size_t duplicate_edges = 0;
  std::size_t dropped_labels = 0;  // labels left without any edge
};

/// Removes self-loops, collapses duplicate edges, drops nodes left isolated
/// and renumbers the rest densely in ascending label order.
/// Throws DataError("no usable edges") when nothing remains.
DirectedGraph preprocess(const RawEdgeList& raw, PreprocessReport* report = nullptr);

/// Inverse of preprocess: the graph's edges expressed in raw labels.
RawEdgeList to_raw(const DirectedGraph& g);

enum class DegreeMode { total, in, out };

/// Per-node in-, out- and total degree (total = in + out).
struct DegreeTable {
  std::vector<std::uint32_t> in;
  std::vector<std::uint32_t> out;
  std::vector<std::uint32_t> total;

  std::span<const std::uint32_t> of(DegreeMode mode) const noexcept {
    switch (mode) {
      case DegreeMode::in: return in;
      case DegreeMode::out: return out;
      default: return total;
    }
  }
};

DegreeTable degrees(const DirectedGraph& g);

/// 2m/n.
inline double mean_degree(const DirectedGraph& g) {
  return 2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(g.num_nodes());
}

const char* to_string(DegreeMode mode) noexcept;

}  // namespace citetopo
