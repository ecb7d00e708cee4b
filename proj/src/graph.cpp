#include "pramtraj/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace pramtraj {

InterconnectionGraph::InterconnectionGraph(std::size_t n, std::vector<Edge> edges, bool self_loops)
    : n_(n), self_loops_(n, self_loops ? 1 : 0) {
  for (const Edge& e : edges) {
    if (e.from >= n || e.to >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.from == e.to) throw std::invalid_argument("self pairs belong in the self-loop flags");
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.to != b.to ? a.to < b.to : a.from < b.from; });
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  in_offsets_.assign(n + 1, 0);
  for (const Edge& e : edges) ++in_offsets_[e.to + 1];
  for (std::size_t i = 0; i < n; ++i) in_offsets_[i + 1] += in_offsets_[i];
  in_sources_.reserve(edges.size());
  for (const Edge& e : edges) in_sources_.push_back(e.from);
}

InterconnectionGraph InterconnectionGraph::complete(std::size_t n, bool self_loops) {
  InterconnectionGraph g;
  g.n_ = n;
  g.complete_ = true;
  g.self_loops_.assign(n, self_loops ? 1 : 0);
  return g;
}

InterconnectionGraph InterconnectionGraph::empty(std::size_t n, bool self_loops) {
  return InterconnectionGraph(n, {}, self_loops);
}

std::size_t InterconnectionGraph::edge_count() const {
  return complete_ ? n_ * (n_ == 0 ? 0 : n_ - 1) : in_sources_.size();
}

std::span<const ProcId> InterconnectionGraph::in_neighbors(ProcId i) const {
  if (complete_ || i >= n_) return {};
  return std::span<const ProcId>(in_sources_).subspan(in_offsets_[i],
                                                      in_offsets_[i + 1] - in_offsets_[i]);
}

std::vector<Edge> InterconnectionGraph::edges() const {
  std::vector<Edge> out;
  if (complete_) {
    for (ProcId i = 0; i < n_; ++i)
      for (ProcId j = 0; j < n_; ++j)
        if (i != j) out.push_back({i, j});
    return out;
  }
  for (ProcId to = 0; to < n_; ++to)
    for (ProcId from : in_neighbors(to)) out.push_back({from, to});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pramtraj
