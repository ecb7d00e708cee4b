#include <algorithm>
#include <numeric>

#include "pramtraj/algorithms.hpp"
#include "pramtraj/hashing.hpp"

namespace pramtraj {

namespace {

struct AlgoName {
  Algorithm algo;
  std::string_view id;
};

constexpr std::array<AlgoName, 6> kNames = {{
    {Algorithm::parallel_search, "parallel_search"},
    {Algorithm::binary_search, "binary_search"},
    {Algorithm::oets, "oets"},
    {Algorithm::bubble_sort, "bubble_sort"},
    {Algorithm::dcsc, "dcsc"},
    {Algorithm::kosaraju, "kosaraju"},
}};

}  // namespace

std::string_view algorithm_id(Algorithm a) {
  for (const auto& e : kNames)
    if (e.algo == a) return e.id;
  throw UnknownAlgorithm("unknown algorithm enumerator");
}

std::optional<Algorithm> try_parse_algorithm(std::string_view id) {
  for (const auto& e : kNames)
    if (e.id == id) return e.algo;
  return std::nullopt;
}

Algorithm parse_algorithm(std::string_view id) {
  if (auto a = try_parse_algorithm(id)) return *a;
  throw UnknownAlgorithm("unknown algorithm '" + std::string(id) +
                         "' (expected parallel_search, binary_search, oets, bubble_sort, dcsc "
                         "or kosaraju)");
}

Task task_of(Algorithm a) {
  switch (a) {
    case Algorithm::parallel_search:
    case Algorithm::binary_search: return Task::search;
    case Algorithm::oets:
    case Algorithm::bubble_sort: return Task::sort;
    default: return Task::scc;
  }
}

std::string_view task_id(Task t) {
  switch (t) {
    case Task::search: return "search";
    case Task::sort: return "sort";
    default: return "scc";
  }
}

Task parse_task(std::string_view id) {
  if (id == "search") return Task::search;
  if (id == "sort") return Task::sort;
  if (id == "scc") return Task::scc;
  throw std::invalid_argument("unknown pair '" + std::string(id) +
                              "' (expected search, sort or scc)");
}

bool is_parallel(Algorithm a) {
  return a == Algorithm::parallel_search || a == Algorithm::oets || a == Algorithm::dcsc;
}

std::array<Algorithm, 2> pair_of(Task t) {
  switch (t) {
    case Task::search: return {Algorithm::parallel_search, Algorithm::binary_search};
    case Task::sort: return {Algorithm::oets, Algorithm::bubble_sort};
    default: return {Algorithm::dcsc, Algorithm::kosaraju};
  }
}

void SearchInstance::validate() const {
  if (items.empty()) throw std::invalid_argument("search instance needs at least one item");
  for (std::size_t i = 1; i < items.size(); ++i)
    if (!(items[i - 1] > items[i]))
      throw std::invalid_argument("search items must be distinct and strictly descending");
}

void SortInstance::validate() const {
  if (items.empty()) throw std::invalid_argument("sort instance needs at least one item");
}

std::vector<std::size_t> PredecessorPointers::order() const {
  const std::size_t n = pred.size();
  std::vector<std::size_t> next(n, n);
  std::size_t head = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (pred[i] >= n) throw std::invalid_argument("predecessor out of range");
    if (pred[i] == i) {
      if (head != n) throw std::invalid_argument("predecessor chain has two heads");
      head = i;
    } else {
      if (next[pred[i]] != n) throw std::invalid_argument("predecessor chain branches");
      next[pred[i]] = i;
    }
  }
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t v = head; v != n && out.size() <= n; v = next[v]) out.push_back(v);
  if (n > 0 && (head == n || out.size() != n))
    throw std::invalid_argument("predecessor pointers do not form a single chain");
  return out;
}

PredecessorPointers PredecessorPointers::from_order(const std::vector<std::size_t>& order) {
  PredecessorPointers p;
  p.pred.assign(order.size(), 0);
  for (std::size_t k = 0; k < order.size(); ++k) p.pred.at(order[k]) = order[k == 0 ? 0 : k - 1];
  return p;
}

SccAssignment SccAssignment::normalized() const {
  const std::size_t n = scc_ptr.size();
  std::vector<std::size_t> rep_min(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t r = scc_ptr[v];
    if (r >= n) throw std::invalid_argument("scc pointer out of range");
    rep_min[r] = std::min(rep_min[r], v);
  }
  SccAssignment out;
  out.scc_ptr.resize(n);
  for (std::size_t v = 0; v < n; ++v) out.scc_ptr[v] = rep_min[scc_ptr[v]];
  return out;
}

std::uint64_t digest(const Instance& inst) {
  return std::visit(
      [](const auto& x) -> std::uint64_t {
        using T = std::decay_t<decltype(x)>;
        std::uint64_t h = kFnvOffset;
        if constexpr (std::is_same_v<T, SearchInstance>) {
          h = fnv1a("search", h);
          h = fnv1a_u64(x.items.size(), h);
          for (double d : x.items) h = fnv1a_double(d, h);
          h = fnv1a_double(x.x, h);
        } else if constexpr (std::is_same_v<T, SortInstance>) {
          h = fnv1a("sort", h);
          h = fnv1a_u64(x.items.size(), h);
          for (double d : x.items) h = fnv1a_double(d, h);
        } else {
          h = fnv1a("scc", h);
          h = fnv1a_u64(x.node_count(), h);
          for (const Edge& e : x.edges()) h = fnv1a_u64(e.to, fnv1a_u64(e.from, h));
        }
        return h;
      },
      inst);
}

AlgorithmRun run_algorithm(Algorithm algo, const Instance& inst) {
  auto wrong = [&] {
    return std::invalid_argument("instance kind does not match algorithm " +
                                 std::string(algorithm_id(algo)));
  };
  AlgorithmRun out;
  out.algo = algo;
  auto take = [&](auto run) {
    out.output = std::move(run.output);
    out.trace = std::move(run.trace);
  };
  switch (task_of(algo)) {
    case Task::search: {
      const auto* s = std::get_if<SearchInstance>(&inst);
      if (!s) throw wrong();
      take(algo == Algorithm::parallel_search ? parallel_search(*s) : binary_search(*s));
      break;
    }
    case Task::sort: {
      const auto* s = std::get_if<SortInstance>(&inst);
      if (!s) throw wrong();
      take(algo == Algorithm::oets ? oets_sort(*s) : bubble_sort(*s));
      break;
    }
    case Task::scc: {
      const auto* g = std::get_if<Digraph>(&inst);
      if (!g) throw wrong();
      take(algo == Algorithm::dcsc ? dcsc(*g) : kosaraju(*g));
      break;
    }
  }
  return out;
}

}  // namespace pramtraj
