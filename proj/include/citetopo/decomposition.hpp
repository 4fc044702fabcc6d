#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "citetopo/graph.hpp"

namespace citetopo {

/// Weakly connected components. Component ids are assigned in order of each
/// component's smallest NodeId, so id 0 always contains node 0.
struct WccResult {
  std::vector<std::uint32_t> component;
  std::size_t num_components = 0;
  std::uint32_t largest = 0;  // lowest id among the largest components
  std::size_t largest_size = 0;
  std::size_t num_nodes = 0;

  double largest_fraction() const noexcept {
    return static_cast<double>(largest_size) / static_cast<double>(num_nodes);
  }
};

WccResult largest_wcc(const DirectedGraph& g);

enum class FieldRole : std::uint8_t { outside, in_field, core, out_field };

/// Field bow-tie of the largest WCC: in-field nodes cite nothing (no
/// out-links), out-field nodes are never cited (no in-links), the core has
/// both. Fractions are relative to the whole graph, not the component.
struct FieldBowTie {
  std::vector<NodeId> in_field;
  std::vector<NodeId> core;
  std::vector<NodeId> out_field;
  std::size_t num_nodes = 0;

  double in_fraction() const noexcept { return fraction(in_field.size()); }
  double core_fraction() const noexcept { return fraction(core.size()); }
  double out_fraction() const noexcept { return fraction(out_field.size()); }
  std::size_t size() const noexcept { return in_field.size() + core.size() + out_field.size(); }

 private:
  double fraction(std::size_t k) const noexcept {
    return static_cast<double>(k) / static_cast<double>(num_nodes);
  }
};

FieldBowTie field_bowtie(const DirectedGraph& g, const WccResult& wcc);

/// Per-node role; `outside` for nodes not in the largest WCC.
std::vector<FieldRole> field_roles(const FieldBowTie& bowtie);

/// Directed cycles are legal input but unexpected in citation data.
struct CycleDiagnostics {
  std::size_t cyclic_components = 0;  // strongly connected components with > 1 node
  std::size_t nodes_on_cycles = 0;
  std::size_t reciprocal_pairs = 0;
};

CycleDiagnostics cycle_diagnostics(const DirectedGraph& g);

}  // namespace citetopo
