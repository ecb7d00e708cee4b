#include "pramtraj/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "pramtraj/hashing.hpp"

namespace pramtraj {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below needs a positive bound");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do r = next();
  while (r >= limit);
  return r % bound;
}

std::uint64_t sample_seed(std::uint64_t master, std::string_view family, std::size_t n,
                          std::size_t index) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ fnv1a(family));
  h = mix64(h ^ static_cast<std::uint64_t>(n));
  return mix64(h ^ static_cast<std::uint64_t>(index));
}

std::vector<double> distinct_uniforms(std::size_t n, Rng& rng) {
  std::vector<double> u(n);
  for (double& x : u) x = rng.uniform();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return u[a] != u[b] ? u[a] < u[b] : a < b; });
  std::vector<double> out(n);
  const double dn = static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t k = order[r];
    double v = (static_cast<double>(r) + u[k]) / dn;
    // Guard the bin boundary against rounding up into the next bin.
    out[k] = std::min(v, std::nextafter((static_cast<double>(r) + 1.0) / dn, 0.0));
  }
  return out;
}

SearchInstance gen_search_instance(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("search instances need n >= 1");
  Rng rng(seed);
  SearchInstance inst;
  inst.items = distinct_uniforms(n, rng);
  std::sort(inst.items.begin(), inst.items.end(), std::greater<>());
  // One gap beyond each end so that ranks 0 and n both occur.
  const double gap = 1.0 / static_cast<double>(n);
  const double lo = inst.items.back() - gap;
  const double hi = inst.items.front() + gap;
  inst.x = lo + (hi - lo) * rng.uniform();
  return inst;
}

SortInstance gen_permutation(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sort instances need n >= 1");
  Rng rng(seed);
  SortInstance inst;
  inst.items = distinct_uniforms(n, rng);
  rng.shuffle(inst.items);
  return inst;
}

Digraph gen_digraph(std::size_t n, std::size_t max_degree, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("digraphs need n >= 1");
  if (max_degree < 1) throw std::invalid_argument("max_degree must be >= 1");
  Rng rng(seed);
  const std::size_t cap = std::min(max_degree, n - 1);
  std::vector<Edge> edges;
  std::vector<std::size_t> candidates;
  for (std::size_t u = 0; u < n; ++u) {
    const std::size_t deg = static_cast<std::size_t>(rng.below(cap + 1));
    candidates.clear();
    for (std::size_t v = 0; v < n; ++v)
      if (v != u) candidates.push_back(v);
    // Partial Fisher-Yates: the first deg slots are a uniform subset.
    for (std::size_t k = 0; k < deg; ++k) {
      std::swap(candidates[k], candidates[k + rng.below(candidates.size() - k)]);
      edges.push_back({u, candidates[k]});
    }
  }
  return Digraph(n, std::move(edges));
}

std::vector<double> positional_scalars(std::size_t n, std::uint64_t seed) {
  Rng rng(mix64(seed ^ fnv1a("pos")));
  std::vector<double> pos = distinct_uniforms(n, rng);
  std::sort(pos.begin(), pos.end());
  return pos;
}

Instance generate_instance(Algorithm algo, std::size_t n, std::uint64_t seed,
                           std::size_t max_degree) {
  switch (task_of(algo)) {
    case Task::search: return gen_search_instance(n, seed);
    case Task::sort: return gen_permutation(n, seed);
    default: return gen_digraph(n, max_degree, seed);
  }
}

}  // namespace pramtraj
