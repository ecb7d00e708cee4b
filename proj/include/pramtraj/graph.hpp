#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pramtraj/cell.hpp"

namespace pramtraj {

struct Edge {
  ProcId from = 0;
  ProcId to = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Fixed wiring between processors. Edge (j, i) means processor i may read the
/// local memory of processor j. Self-loops are tracked separately from edges.
class InterconnectionGraph {
 public:
  InterconnectionGraph() = default;
  /// Duplicate edges are merged; self pairs and out-of-range endpoints throw.
  InterconnectionGraph(std::size_t n, std::vector<Edge> edges, bool self_loops = true);

  static InterconnectionGraph complete(std::size_t n, bool self_loops = true);
  static InterconnectionGraph empty(std::size_t n, bool self_loops = true);

  std::size_t node_count() const { return n_; }
  /// Number of non-self directed edges.
  std::size_t edge_count() const;
  bool is_complete() const { return complete_; }

  bool has_edge(ProcId from, ProcId to) const {
    if (from >= n_ || to >= n_ || from == to) return false;
    if (complete_) return true;
    const ProcId* first = in_sources_.data() + in_offsets_[to];
    const ProcId* last = in_sources_.data() + in_offsets_[to + 1];
    return std::binary_search(first, last, from);
  }
  bool has_self_loop(ProcId i) const { return i < n_ && self_loops_[i]; }
  void set_self_loop(ProcId i, bool on) { self_loops_.at(i) = on ? 1 : 0; }

  /// Sorted sources j with (j, i) in the graph. Empty for complete graphs,
  /// which are never materialised.
  std::span<const ProcId> in_neighbors(ProcId i) const;
  /// Materialised edge list (complete graphs are expanded on demand).
  std::vector<Edge> edges() const;

  bool operator==(const InterconnectionGraph&) const = default;

 private:
  std::size_t n_ = 0;
  bool complete_ = false;
  std::vector<std::uint8_t> self_loops_;
  std::vector<std::size_t> in_offsets_;
  std::vector<ProcId> in_sources_;
};

}  // namespace pramtraj
