#include <algorithm>

#include "pramtraj/algorithms.hpp"

namespace pramtraj {

namespace {

namespace L = layout::sort;

// Keys compare with the original item index as tie-breaker, which makes both
// sorts stable. Item indices are only read when they decide or move something.
bool compare_exchange(NodeContext& c, ProcId partner) {
  const ProcId k = c.id();
  const double mine = c.self(L::kKey).as_scalar();
  const double other = c.neighbor(partner, L::kKey).as_scalar();
  bool out_of_order = k < partner ? other < mine : mine < other;
  if (mine == other) {
    const std::size_t mi = c.self(L::kItem).as_index();
    const std::size_t oi = c.neighbor(partner, L::kItem).as_index();
    out_of_order = k < partner ? oi < mi : mi < oi;
  }
  if (out_of_order) {
    c.set(L::kKey, Cell::scalar(other));
    c.set(L::kItem, Cell::index(c.neighbor(partner, L::kItem).as_index()));
  } else {
    c.mark_active();
  }
  return out_of_order;
}

MachineState sort_state(const SortInstance& inst, std::size_t shared_size) {
  const std::size_t n = inst.items.size();
  MachineState s(n, L::kRegisters, shared_size);
  for (std::size_t i = 0; i < n; ++i) {
    s.set_local(i, L::kKey, Cell::scalar(inst.items[i]));
    s.set_local(i, L::kItem, Cell::index(i));
  }
  return s;
}

PredecessorPointers chain_of(const MachineState& s) {
  std::vector<std::size_t> order(s.width());
  for (std::size_t k = 0; k < s.width(); ++k) order[k] = s.local(k, L::kItem).as_index();
  return PredecessorPointers::from_order(order);
}

struct OetsProgram {
  std::size_t n;

  void enabled(const MachineState& s, std::vector<ProcId>& out) const {
    for (std::size_t k = s.clock() % 2; k + 1 < n; k += 2) {
      out.push_back(k);
      out.push_back(k + 1);
    }
  }

  void node(NodeContext& c) const {
    const std::size_t k = c.id();
    const bool left = (k + c.clock()) % 2 == 0;
    if (compare_exchange(c, left ? k + 1 : k - 1)) c.write_shared(L::kSwapped, Cell::flag(true));
  }

  // Clock feature: publishes the round parity and tracks how many consecutive
  // rounds ended without a swap. Processor writes to kSwapped win over the reset.
  void graph(GraphContext& g) const {
    const bool swapped = g.shared(L::kSwapped).as_flag();
    const std::size_t quiet = g.shared(L::kQuiet).as_index();
    g.write_shared(L::kParity, Cell::flag(g.clock() % 2 == 1));
    g.write_shared(L::kQuiet, Cell::index(swapped ? 0 : quiet + 1));
    g.write_shared(L::kSwapped, Cell::flag(false));
  }
};

struct BubbleProgram {
  std::size_t n;

  void enabled(const MachineState& s, std::vector<ProcId>& out) const {
    if (s.shared(L::kPass).as_index() + 1 >= n) return;
    const std::size_t j = s.shared(L::kPos).as_index();
    out.push_back(j);
    out.push_back(j + 1);
  }

  void node(NodeContext& c) const {
    const std::size_t i = c.shared(L::kPass).as_index();
    const std::size_t j = c.shared(L::kPos).as_index();
    const bool left = c.id() == j;
    compare_exchange(c, left ? j + 1 : j);
    if (left) {
      // Advance the cursor: j runs over 0 .. n-2-i within pass i.
      std::size_t ni = i, nj = j + 1;
      if (nj + 1 >= n - i) {
        ni = i + 1;
        nj = 0;
      }
      c.write_shared(L::kPass, Cell::index(ni));
      c.write_shared(L::kPos, Cell::index(nj));
    }
  }
};

InterconnectionGraph linear_array(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    e.push_back({k, k + 1});
    e.push_back({k + 1, k});
  }
  return InterconnectionGraph(n, std::move(e));
}

}  // namespace

Run<PredecessorPointers> oets_sort(const SortInstance& inst) {
  inst.validate();
  const std::size_t n = inst.items.size();
  MachineState init = sort_state(inst, 3);
  init.set_shared(L::kParity, Cell::flag(false));
  init.set_shared(L::kSwapped, Cell::flag(true));
  init.set_shared(L::kQuiet, Cell::index(0));
  // Stop after two consecutive swap-free rounds or after n rounds.
  auto halt = [n](const MachineState& s) {
    return s.clock() >= n ||
           (!s.shared(L::kSwapped).as_flag() && s.shared(L::kQuiet).as_index() >= 1);
  };
  Trace t = run_machine(std::move(init), OetsProgram{n}, linear_array(n), halt, n + 1);
  t.set_algo_id("oets");
  t.set_input_digest(digest(inst));
  t.set_operated_graph(InterconnectionGraph::complete(n));
  auto out = chain_of(t.final_state());
  return {std::move(out), std::move(t)};
}

Run<PredecessorPointers> bubble_sort(const SortInstance& inst) {
  inst.validate();
  const std::size_t n = inst.items.size();
  MachineState init = sort_state(inst, 2);
  init.set_shared(L::kPass, Cell::index(0));
  init.set_shared(L::kPos, Cell::index(0));
  auto graph = InterconnectionGraph::complete(n);
  Trace t = run_machine(
      std::move(init), BubbleProgram{n}, graph,
      [n](const MachineState& s) { return s.shared(L::kPass).as_index() + 1 >= n; },
      n * (n - 1) / 2 + 1);
  t.set_algo_id("bubble_sort");
  t.set_input_digest(digest(inst));
  t.set_operated_graph(std::move(graph));
  auto out = chain_of(t.final_state());
  return {std::move(out), std::move(t)};
}

}  // namespace pramtraj
