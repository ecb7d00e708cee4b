#pragma once

// The three parallel/sequential pairs on the machine substrate. Every run
// returns its output together with the full Trace.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pramtraj/digraph.hpp"
#include "pramtraj/machine.hpp"

namespace pramtraj {

enum class Algorithm { parallel_search, binary_search, oets, bubble_sort, dcsc, kosaraju };
enum class Task { search, sort, scc };

inline constexpr std::array<Algorithm, 6> kAllAlgorithms = {
    Algorithm::parallel_search, Algorithm::binary_search, Algorithm::oets,
    Algorithm::bubble_sort,     Algorithm::dcsc,          Algorithm::kosaraju};

class UnknownAlgorithm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string_view algorithm_id(Algorithm a);
/// Throws UnknownAlgorithm.
Algorithm parse_algorithm(std::string_view id);
std::optional<Algorithm> try_parse_algorithm(std::string_view id);
Task task_of(Algorithm a);
std::string_view task_id(Task t);
/// Throws std::invalid_argument for anything but search, sort or scc.
Task parse_task(std::string_view id);
bool is_parallel(Algorithm a);
/// The (parallel, sequential) pair solving `t`.
std::array<Algorithm, 2> pair_of(Task t);

struct SearchInstance {
  /// Distinct, strictly descending.
  std::vector<double> items;
  double x = 0.0;
  /// Throws std::invalid_argument when the invariants do not hold.
  void validate() const;
  bool operator==(const SearchInstance&) const = default;
};

struct Rank {
  std::size_t value = 0;
  bool operator==(const Rank&) const = default;
};

struct SortInstance {
  std::vector<double> items;
  void validate() const;
  bool operator==(const SortInstance&) const = default;
};

/// pred[i] is the item ordered directly before item i; the first item points
/// to itself.
struct PredecessorPointers {
  std::vector<std::size_t> pred;
  /// Items in chain order. Throws std::invalid_argument if the pointers do not
  /// form a single chain.
  std::vector<std::size_t> order() const;
  static PredecessorPointers from_order(const std::vector<std::size_t>& order);
  bool operator==(const PredecessorPointers&) const = default;
};

struct SccAssignment {
  std::vector<std::size_t> scc_ptr;
  /// Relabels every node with the minimal index of its component.
  SccAssignment normalized() const;
  bool operator==(const SccAssignment&) const = default;
};

using Instance = std::variant<SearchInstance, SortInstance, Digraph>;
using Output = std::variant<Rank, PredecessorPointers, SccAssignment>;

template <class Out>
struct Run {
  Out output;
  Trace trace;
};

Run<Rank> parallel_search(const SearchInstance& inst);
Run<Rank> binary_search(const SearchInstance& inst);
Run<PredecessorPointers> oets_sort(const SortInstance& inst);
Run<PredecessorPointers> bubble_sort(const SortInstance& inst);
Run<SccAssignment> dcsc(const Digraph& g);
Run<SccAssignment> kosaraju(const Digraph& g);

struct BfsResult {
  std::vector<std::size_t> descendants;   // sorted
  std::vector<std::size_t> predecessors;  // sorted
  Trace trace;
};

/// Forward and backward search from `source` in lockstep, restricted to
/// alive nodes (empty `alive` means all nodes).
BfsResult bidirectional_bfs(const Digraph& g, std::size_t source, std::vector<bool> alive = {});

struct AlgorithmRun {
  Algorithm algo = Algorithm::parallel_search;
  Output output;
  Trace trace;
};

/// Dispatches on `algo`; throws std::invalid_argument if the instance kind
/// does not match the algorithm's task.
AlgorithmRun run_algorithm(Algorithm algo, const Instance& inst);

std::uint64_t digest(const Instance& inst);

/// Register layouts, shared by the programs and the hint encoders.
namespace layout {

namespace search {
inline constexpr std::size_t kValue = 0;  // A_i on item nodes, x on node n
inline constexpr std::size_t kAux = 1;    // parallel: h_i; binary: comparison flag on node n
inline constexpr std::size_t kRegisters = 2;
inline constexpr std::size_t kRank = 0;  // parallel shared
inline constexpr std::size_t kLow = 0;   // binary shared
inline constexpr std::size_t kHigh = 1;
}  // namespace search

namespace sort {
inline constexpr std::size_t kKey = 0;
inline constexpr std::size_t kItem = 1;
inline constexpr std::size_t kRegisters = 2;
inline constexpr std::size_t kParity = 0;  // oets shared
inline constexpr std::size_t kSwapped = 1;
inline constexpr std::size_t kQuiet = 2;
inline constexpr std::size_t kPass = 0;  // bubble shared
inline constexpr std::size_t kPos = 1;
}  // namespace sort

namespace scc {
inline constexpr std::size_t kUndiscovered = 0;
inline constexpr std::size_t kFwd = 1;  // propagated source index, n = unreached
inline constexpr std::size_t kBwd = 2;
inline constexpr std::size_t kInScc = 3;
inline constexpr std::size_t kSccPtr = 4;
inline constexpr std::size_t kRegisters = 5;
inline constexpr std::size_t kMode = 0;
inline constexpr std::size_t kPivot = 1;
inline constexpr std::size_t kChanged = 2;
inline constexpr std::size_t kShared = 3;
enum Mode : std::size_t { kSelect = 0, kSource = 1, kSearch = 2, kDone = 3 };
}  // namespace scc

namespace dfs {
inline constexpr std::size_t kColor1 = 0;  // 0 white, 1 grey, 2 black
inline constexpr std::size_t kParent1 = 1;
inline constexpr std::size_t kFinish = 2;
inline constexpr std::size_t kColor2 = 3;
inline constexpr std::size_t kParent2 = 4;
inline constexpr std::size_t kSccPtr = 5;
inline constexpr std::size_t kRegisters = 6;
inline constexpr std::size_t kPhase = 0;  // 1, 2, 3 = done
inline constexpr std::size_t kCursor = 1;
inline constexpr std::size_t kParent = 2;
inline constexpr std::size_t kTime = 3;
inline constexpr std::size_t kNextRoot = 4;
inline constexpr std::size_t kRoot = 5;
inline constexpr std::size_t kShared = 6;
enum Color : std::size_t { kWhite = 0, kGrey = 1, kBlack = 2 };
}  // namespace dfs

}  // namespace layout

}  // namespace pramtraj
