#include <algorithm>

#include "pramtraj/algorithms.hpp"

namespace pramtraj {

namespace {

namespace L = layout::dfs;

// Two-pass DFS, one node event per step. The acting node is the DFS cursor,
// or the next root once a tree is complete. On its turn a node either hands
// the cursor to its first white neighbour or finishes and hands it back to
// its parent. Pass 1 follows out-edges and stamps finish ranks; pass 2 follows
// in-edges from roots in decreasing finish order and labels components.
struct KosarajuProgram {
  const Digraph* g;

  void enabled(const MachineState& s, std::vector<ProcId>& out) const {
    const std::size_t n = s.width();
    if (s.shared(L::kPhase).as_index() > 2) return;
    const std::size_t cursor = s.shared(L::kCursor).as_index();
    const std::size_t root = s.shared(L::kNextRoot).as_index();
    if (cursor != n)
      out.push_back(cursor);
    else if (root != n)
      out.push_back(root);
  }

  void node(NodeContext& c) const {
    const std::size_t n = c.width();
    const ProcId v = c.id();
    const bool first = c.shared(L::kPhase).as_index() == 1;
    const std::size_t color_reg = first ? L::kColor1 : L::kColor2;
    const std::size_t parent_reg = first ? L::kParent1 : L::kParent2;

    std::size_t parent = v;
    if (c.self(color_reg).as_index() == L::kWhite) {
      if (c.shared(L::kCursor).as_index() == n) {
        if (!first) {
          c.write_shared(L::kRoot, Cell::index(v));
          c.set(L::kSccPtr, Cell::index(v));
        }
      } else {
        parent = c.shared(L::kParent).as_index();
        c.neighbor(parent, color_reg);  // tree edge
        if (!first) c.set(L::kSccPtr, Cell::index(c.shared(L::kRoot).as_index()));
      }
      c.set(color_reg, Cell::index(L::kGrey));
      c.set(parent_reg, Cell::index(parent));
    } else {
      parent = c.self(parent_reg).as_index();
    }

    for (std::size_t w : first ? g->out(v) : g->in(v)) {
      if (c.neighbor(w, color_reg).as_index() == L::kWhite) {
        c.write_shared(L::kCursor, Cell::index(w));
        c.write_shared(L::kParent, Cell::index(v));
        c.mark_active();
        return;
      }
    }

    c.set(color_reg, Cell::index(L::kBlack));
    if (first) {
      const std::size_t t = c.shared(L::kTime).as_index();
      c.set(L::kFinish, Cell::index(t));
      c.write_shared(L::kTime, Cell::index(t + 1));
    }
    c.write_shared(L::kCursor, Cell::index(parent == v ? n : parent));
  }

  // Tracks the next root: the minimal white node in pass 1, the white node
  // with the latest finish in pass 2. Switches passes when both the cursor and
  // the root queue are empty.
  void graph(GraphContext& gc) const {
    const std::size_t n = gc.width();
    const std::size_t phase = gc.shared(L::kPhase).as_index();
    if (phase > 2) return;
    const std::size_t cursor = gc.shared(L::kCursor).as_index();
    const std::size_t root = gc.shared(L::kNextRoot).as_index();
    if (cursor == n && root == n) {
      if (phase == 1) {
        gc.write_shared(L::kPhase, Cell::index(2));
        gc.write_shared(L::kNextRoot, Cell::index(latest_white(gc, n, n)));
      } else {
        gc.write_shared(L::kPhase, Cell::index(3));
      }
      return;
    }
    const std::size_t acting = cursor != n ? cursor : root;
    std::size_t next = n;
    if (phase == 1) {
      for (ProcId v = 0; v < n && next == n; ++v)
        if (v != acting && gc.node(v, L::kColor1).as_index() == L::kWhite) next = v;
    } else {
      next = latest_white(gc, n, acting);
    }
    gc.write_shared(L::kNextRoot, Cell::index(next));
  }

  static std::size_t latest_white(GraphContext& gc, std::size_t n, std::size_t skip) {
    std::size_t best = n, best_rank = 0;
    for (ProcId v = 0; v < n; ++v) {
      if (v == skip || gc.node(v, L::kColor2).as_index() != L::kWhite) continue;
      const std::size_t r = gc.node(v, L::kFinish).as_index();
      if (best == n || r > best_rank) {
        best = v;
        best_rank = r;
      }
    }
    return best;
  }
};

}  // namespace

Run<SccAssignment> kosaraju(const Digraph& g) {
  const std::size_t n = g.node_count();
  MachineState init(n, L::kRegisters, L::kShared);
  for (std::size_t v = 0; v < n; ++v) {
    init.set_local(v, L::kColor1, Cell::index(L::kWhite));
    init.set_local(v, L::kColor2, Cell::index(L::kWhite));
    init.set_local(v, L::kSccPtr, Cell::index(v));
  }
  init.set_shared(L::kPhase, Cell::index(1));
  init.set_shared(L::kCursor, Cell::index(n));
  init.set_shared(L::kTime, Cell::index(0));
  init.set_shared(L::kNextRoot, Cell::index(0));
  Trace t = run_machine(
      std::move(init), KosarajuProgram{&g}, g.interconnection(),
      [](const MachineState& s) { return s.shared(L::kPhase).as_index() == 3; },
      2 * (n + g.edge_count()) + 8);
  t.set_algo_id("kosaraju");
  t.set_input_digest(digest(g));
  t.set_operated_graph(g.as_operated_graph());
  SccAssignment out;
  out.scc_ptr.resize(n);
  for (std::size_t v = 0; v < n; ++v) out.scc_ptr[v] = t.final_state().local(v, L::kSccPtr).as_index();
  return {std::move(out), std::move(t)};
}

}  // namespace pramtraj
