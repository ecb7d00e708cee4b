#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pramtraj/graph.hpp"

namespace pramtraj {

/// Directed input graph for the SCC algorithms. Self-loops are rejected and
/// duplicate edges merged; adjacency lists are sorted.
class Digraph {
 public:
  Digraph() = default;
  Digraph(std::size_t n, std::vector<Edge> edges);

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  /// Sorted by (from, to).
  std::span<const Edge> edges() const { return edges_; }
  std::span<const std::size_t> out(std::size_t u) const;
  std::span<const std::size_t> in(std::size_t v) const;
  bool has_edge(std::size_t u, std::size_t v) const;

  Digraph reversed() const;
  /// Symmetric closure.
  Digraph undirected() const;
  /// Wiring in which every input edge can carry information both ways.
  InterconnectionGraph interconnection() const;
  /// The input edges themselves, for edge-efficiency denominators.
  InterconnectionGraph as_operated_graph() const;

  bool operator==(const Digraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_, out_targets_;
  std::vector<std::size_t> in_offsets_, in_sources_;
};

}  // namespace pramtraj
