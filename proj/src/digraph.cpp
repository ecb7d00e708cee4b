#include "pramtraj/digraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace pramtraj {

Digraph::Digraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.from >= n || e.to >= n) throw std::invalid_argument("digraph edge endpoint out of range");
    if (e.from == e.to) throw std::invalid_argument("digraph instances may not contain self-loops");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++out_offsets_[e.from + 1];
    ++in_offsets_[e.to + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_offsets_[i + 1] += out_offsets_[i];
    in_offsets_[i + 1] += in_offsets_[i];
  }
  out_targets_.resize(edges_.size());
  in_sources_.resize(edges_.size());
  std::vector<std::size_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  // edges_ is sorted by (from, to), so both lists come out sorted.
  for (const Edge& e : edges_) {
    out_targets_[out_fill[e.from]++] = e.to;
    in_sources_[in_fill[e.to]++] = e.from;
  }
}

std::span<const std::size_t> Digraph::out(std::size_t u) const {
  return std::span<const std::size_t>(out_targets_)
      .subspan(out_offsets_.at(u), out_offsets_[u + 1] - out_offsets_[u]);
}

std::span<const std::size_t> Digraph::in(std::size_t v) const {
  return std::span<const std::size_t>(in_sources_)
      .subspan(in_offsets_.at(v), in_offsets_[v + 1] - in_offsets_[v]);
}

bool Digraph::has_edge(std::size_t u, std::size_t v) const {
  if (u >= n_) return false;
  auto o = out(u);
  return std::binary_search(o.begin(), o.end(), v);
}

Digraph Digraph::reversed() const {
  std::vector<Edge> r;
  r.reserve(edges_.size());
  for (const Edge& e : edges_) r.push_back({e.to, e.from});
  return Digraph(n_, std::move(r));
}

Digraph Digraph::undirected() const {
  std::vector<Edge> r(edges_.begin(), edges_.end());
  for (const Edge& e : edges_) r.push_back({e.to, e.from});
  return Digraph(n_, std::move(r));
}

InterconnectionGraph Digraph::interconnection() const {
  auto u = undirected();
  return InterconnectionGraph(n_, std::vector<Edge>(u.edges_.begin(), u.edges_.end()));
}

InterconnectionGraph Digraph::as_operated_graph() const {
  return InterconnectionGraph(n_, edges_);
}

}  // namespace pramtraj
