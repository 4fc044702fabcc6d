#include "citetopo/decomposition.hpp"

#include <algorithm>
#include <limits>

namespace citetopo {

WccResult largest_wcc(const DirectedGraph& g) {
  const std::size_t n = g.num_nodes();
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  WccResult r;
  r.num_nodes = n;
  r.component.assign(n, unset);

  std::vector<NodeId> stack;
  std::vector<std::size_t> sizes;
  for (NodeId s = 0; s < n; ++s) {
    if (r.component[s] != unset) continue;
    const auto id = static_cast<std::uint32_t>(sizes.size());
    std::size_t size = 0;
    r.component[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      ++size;
      auto visit = [&](NodeId v) {
        if (r.component[v] == unset) {
          r.component[v] = id;
          stack.push_back(v);
        }
      };
      for (NodeId v : g.out_neighbours(u)) visit(v);
      for (NodeId v : g.in_neighbours(u)) visit(v);
    }
    sizes.push_back(size);
  }
  r.num_components = sizes.size();
  auto best = std::max_element(sizes.begin(), sizes.end());  // first maximum = lowest id
  r.largest = static_cast<std::uint32_t>(best - sizes.begin());
  r.largest_size = *best;
  return r;
}

FieldBowTie field_bowtie(const DirectedGraph& g, const WccResult& wcc) {
  FieldBowTie b;
  b.num_nodes = g.num_nodes();
  // Every neighbour of a component member is a member, so the induced
  // subgraph degrees equal the plain degrees.
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (wcc.component[u] != wcc.largest) continue;
    const bool has_out = g.out_degree(u) > 0;
    const bool has_in = g.in_degree(u) > 0;
    if (has_out && has_in)
      b.core.push_back(u);
    else if (has_out)
      b.out_field.push_back(u);
    else
      b.in_field.push_back(u);
  }
  return b;
}

std::vector<FieldRole> field_roles(const FieldBowTie& bowtie) {
  std::vector<FieldRole> roles(bowtie.num_nodes, FieldRole::outside);
  for (NodeId u : bowtie.in_field) roles[u] = FieldRole::in_field;
  for (NodeId u : bowtie.core) roles[u] = FieldRole::core;
  for (NodeId u : bowtie.out_field) roles[u] = FieldRole::out_field;
  return roles;
}

CycleDiagnostics cycle_diagnostics(const DirectedGraph& g) {
  // Iterative Tarjan.
  const std::size_t n = g.num_nodes();
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(n, unset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> scc_stack;
  struct Frame {
    NodeId node;
    std::size_t next;
  };
  std::vector<Frame> call;
  std::uint32_t counter = 0;
  CycleDiagnostics d;

  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    scc_stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      auto outs = g.out_neighbours(f.node);
      if (f.next < outs.size()) {
        NodeId v = outs[f.next++];
        if (index[v] == unset) {
          index[v] = low[v] = counter++;
          scc_stack.push_back(v);
          on_stack[v] = true;
          call.push_back({v, 0});
        } else if (on_stack[v]) {
          low[f.node] = std::min(low[f.node], index[v]);
        }
        continue;
      }
      NodeId u = f.node;
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[u]);
      if (low[u] == index[u]) {
        std::size_t size = 0;
        NodeId w;
        do {
          w = scc_stack.back();
          scc_stack.pop_back();
          on_stack[w] = false;
          ++size;
        } while (w != u);
        if (size > 1) {
          ++d.cyclic_components;
          d.nodes_on_cycles += size;
        }
      }
    }
  }
  g.for_each_edge([&](NodeId u, NodeId v) {
    if (u < v && g.has_edge(v, u)) ++d.reciprocal_pairs;
  });
  return d;
}

}  // namespace citetopo
