#include <algorithm>
#include <bit>

#include "pramtraj/algorithms.hpp"

namespace pramtraj {

namespace {

namespace L = layout::search;

MachineState search_state(const SearchInstance& inst, std::size_t shared_size) {
  const std::size_t n = inst.items.size();
  MachineState s(n + 1, L::kRegisters, shared_size);
  for (std::size_t i = 0; i < n; ++i) s.set_local(i, L::kValue, Cell::scalar(inst.items[i]));
  s.set_local(n, L::kValue, Cell::scalar(inst.x));
  return s;
}

// Item nodes 0..n-1 and the x node n on a star. Step 0 computes the masks,
// step 1 is the concurrent write of qualifying indices; the x node always
// bids n so the empty case resolves to the placeholder.
struct ParallelSearchProgram {
  std::size_t n;

  void enabled(const MachineState& s, std::vector<ProcId>& out) const {
    const std::size_t upto = s.clock() == 0 ? n : s.clock() == 1 ? n + 1 : 0;
    for (ProcId i = 0; i < upto; ++i) out.push_back(i);
  }

  void node(NodeContext& c) const {
    const ProcId i = c.id();
    if (c.clock() == 0) {
      const double a = c.self(L::kValue).as_scalar();
      const double x = c.neighbor(n, L::kValue).as_scalar();
      c.set(L::kAux, Cell::scalar(std::max(a - x, 0.0)));
    } else if (c.clock() == 1) {
      if (i == n || c.self(L::kAux).as_scalar() == 0.0) c.write_shared(L::kRank, Cell::index(i));
    }
  }
};

// Only the midpoint and the x node work; they exchange A_mid and x and the
// midpoint narrows [low, high).
struct BinarySearchProgram {
  std::size_t n;

  void enabled(const MachineState& s, std::vector<ProcId>& out) const {
    const std::size_t low = s.shared(L::kLow).as_index();
    const std::size_t high = s.shared(L::kHigh).as_index();
    if (low < high) {
      out.push_back((low + high) / 2);
      out.push_back(n);
    }
  }

  void node(NodeContext& c) const {
    const std::size_t low = c.shared(L::kLow).as_index();
    const std::size_t high = c.shared(L::kHigh).as_index();
    const std::size_t mid = (low + high) / 2;
    if (c.id() == n) {
      const double x = c.self(L::kValue).as_scalar();
      const double a = c.neighbor(mid, L::kValue).as_scalar();
      c.set(L::kAux, Cell::flag(a <= x));
      c.mark_active();
    } else {
      const double a = c.self(L::kValue).as_scalar();
      const double x = c.neighbor(n, L::kValue).as_scalar();
      if (a <= x)
        c.write_shared(L::kHigh, Cell::index(mid));
      else
        c.write_shared(L::kLow, Cell::index(mid + 1));
    }
  }
};

InterconnectionGraph star(std::size_t n) {
  std::vector<Edge> e;
  e.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    e.push_back({n, i});
    e.push_back({i, n});
  }
  return InterconnectionGraph(n + 1, std::move(e));
}

}  // namespace

Run<Rank> parallel_search(const SearchInstance& inst) {
  inst.validate();
  const std::size_t n = inst.items.size();
  auto graph = star(n);
  Trace t = run_machine(
      search_state(inst, 1), ParallelSearchProgram{n}, graph,
      [](const MachineState& s) { return s.clock() == 2; }, 4);
  t.set_algo_id("parallel_search");
  t.set_input_digest(digest(inst));
  Rank r{t.final_state().shared(L::kRank).as_index()};
  t.set_operated_graph(std::move(graph));
  return {r, std::move(t)};
}

Run<Rank> binary_search(const SearchInstance& inst) {
  inst.validate();
  const std::size_t n = inst.items.size();
  auto graph = InterconnectionGraph::complete(n + 1);
  MachineState init = search_state(inst, 2);
  init.set_shared(L::kLow, Cell::index(0));
  init.set_shared(L::kHigh, Cell::index(n));
  const std::size_t limit = 2 + 2 * static_cast<std::size_t>(std::bit_width(n + 1));
  Trace t = run_machine(
      std::move(init), BinarySearchProgram{n}, graph,
      [](const MachineState& s) {
        return s.shared(L::kLow).as_index() == s.shared(L::kHigh).as_index();
      },
      limit);
  t.set_algo_id("binary_search");
  t.set_input_digest(digest(inst));
  Rank r{t.final_state().shared(L::kLow).as_index()};
  t.set_operated_graph(std::move(graph));
  return {r, std::move(t)};
}

}  // namespace pramtraj
