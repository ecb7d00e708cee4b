#pragma once

// Seeded generators. Everything is derived from std::mt19937_64 output words
// through fixed arithmetic so results do not depend on the standard library's
// distribution implementations.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "pramtraj/algorithms.hpp"

namespace pramtraj {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, bound); bound > 0. Rejection sampling, no bias.
  std::uint64_t below(std::uint64_t bound);
  /// Fisher-Yates.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// Per-sample seed from (master seed, instance family, n, sample index). The
/// family is the task ("search", "sort", "scc"), so both members of a pair
/// see the same instances.
std::uint64_t sample_seed(std::uint64_t master, std::string_view family, std::size_t n,
                          std::size_t index);

/// n distinct values in [0, 1): uniform draws rescaled by rank so that value
/// k lies in [rank/n, (rank+1)/n). Order is the draw order.
std::vector<double> distinct_uniforms(std::size_t n, Rng& rng);

SearchInstance gen_search_instance(std::size_t n, std::uint64_t seed);
SortInstance gen_permutation(std::size_t n, std::uint64_t seed);
Digraph gen_digraph(std::size_t n, std::size_t max_degree, std::uint64_t seed);

/// Strictly increasing positional scalars in [0, 1), drawn from a stream
/// separate from the instance stream of the same seed.
std::vector<double> positional_scalars(std::size_t n, std::uint64_t seed);

Instance generate_instance(Algorithm algo, std::size_t n, std::uint64_t seed,
                           std::size_t max_degree = 3);

}  // namespace pramtraj
