#pragma once

// Reference implementations used by the tests. They share nothing with the
// machine substrate: plain loops over plain containers.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

/// min{i : A_i <= x}, else n.
inline std::size_t linear_rank(const std::vector<double>& a, double x) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] <= x) return i;
  return a.size();
}

/// Item indices in ascending value order, ties by index.
inline std::vector<std::size_t> sorted_order(const std::vector<double>& items) {
  std::vector<std::size_t> idx(items.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return items[a] < items[b]; });
  return idx;
}

/// Lowest writer per address; returns address -> value.
template <class V>
std::map<std::size_t, V> priority_write(const std::vector<std::tuple<std::size_t, std::size_t, V>>& reqs) {
  std::map<std::size_t, std::pair<std::size_t, V>> best;
  for (const auto& [proc, addr, val] : reqs) {
    auto it = best.find(addr);
    if (it == best.end() || proc < it->second.first) best[addr] = {proc, val};
  }
  std::map<std::size_t, V> out;
  for (const auto& [addr, pv] : best) out[addr] = pv.second;
  return out;
}

/// Recursive Tarjan; component label = minimal member index.
inline std::vector<std::size_t> tarjan(std::size_t n,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : edges) adj[u].push_back(v);
  std::vector<long> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack, label(n, n);
  long counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : adj[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      const std::size_t rep = *std::min_element(comp.begin(), comp.end());
      for (std::size_t c : comp) label[c] = rep;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return label;
}

/// Nodes reachable from s (forward) within `alive`, by plain BFS.
inline std::vector<std::size_t> reach(std::size_t n,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                      std::size_t s, const std::vector<bool>& alive, bool backward) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : edges) {
    if (backward)
      adj[v].push_back(u);
    else
      adj[u].push_back(v);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> q{s};
  seen[s] = true;
  for (std::size_t k = 0; k < q.size(); ++k)
    for (std::size_t w : adj[q[k]])
      if (alive[w] && !seen[w]) {
        seen[w] = true;
        q.push_back(w);
      }
  std::sort(q.begin(), q.end());
  return q;
}

/// Largest BFS distance from s within alive nodes.
inline std::size_t eccentricity(std::size_t n,
                                const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                std::size_t s, const std::vector<bool>& alive, bool backward) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : edges) {
    if (backward)
      adj[v].push_back(u);
    else
      adj[u].push_back(v);
  }
  std::vector<std::size_t> dist(n, n + 1);
  std::vector<std::size_t> q{s};
  dist[s] = 0;
  std::size_t ecc = 0;
  for (std::size_t k = 0; k < q.size(); ++k)
    for (std::size_t w : adj[q[k]])
      if (alive[w] && dist[w] > n) {
        dist[w] = dist[q[k]] + 1;
        ecc = std::max(ecc, dist[w]);
        q.push_back(w);
      }
  return ecc;
}

}  // namespace oracle
