#include <algorithm>

#include "pramtraj/algorithms.hpp"

namespace pramtraj {

namespace {

namespace L = layout::scc;

// One lockstep layer of the two searches at node v: min-aggregate the source
// index over alive in-neighbours (forward) and alive out-neighbours
// (backward). Nodes reached from both sides join the component.
void search_layer(NodeContext& c, const Digraph& g) {
  const std::size_t n = c.width();
  const ProcId v = c.id();
  if (!c.self(L::kUndiscovered).as_flag()) return;
  const std::size_t fwd = c.self(L::kFwd).as_index();
  const std::size_t bwd = c.self(L::kBwd).as_index();
  std::size_t nf = fwd, nb = bwd;
  for (std::size_t u : g.in(v))
    if (c.neighbor(u, L::kUndiscovered).as_flag())
      nf = std::min(nf, c.neighbor(u, L::kFwd).as_index());
  for (std::size_t w : g.out(v))
    if (c.neighbor(w, L::kUndiscovered).as_flag())
      nb = std::min(nb, c.neighbor(w, L::kBwd).as_index());
  if (nf == fwd && nb == bwd) return;
  c.set(L::kFwd, Cell::index(nf));
  c.set(L::kBwd, Cell::index(nb));
  c.write_shared(L::kChanged, Cell::flag(true));
  if (nf < n && nb < n && !c.self(L::kInScc).as_flag()) {
    c.set(L::kInScc, Cell::flag(true));
    c.set(L::kSccPtr, Cell::index(nf));
  }
}

bool selecting(std::size_t mode, bool changed) {
  return mode == L::kSelect || (mode == L::kSearch && !changed);
}

// Flattened DCSC: select the minimal undiscovered pivot, seed it, run the
// two searches until nothing changes, retire the intersection, repeat.
struct DcscProgram {
  const Digraph* g;

  void node(NodeContext& c) const {
    const std::size_t n = c.width();
    const std::size_t mode = c.shared(L::kMode).as_index();
    if (mode == L::kDone) return;
    if (selecting(mode, c.shared(L::kChanged).as_flag())) {
      if (!c.self(L::kUndiscovered).as_flag()) return;
      if (c.self(L::kInScc).as_flag()) {
        c.set(L::kUndiscovered, Cell::flag(false));
        return;
      }
      // Reset reachability left over from the previous pivot.
      c.set(L::kFwd, Cell::index(n));
      c.set(L::kBwd, Cell::index(n));
    } else if (mode == L::kSource) {
      const ProcId v = c.id();
      if (c.self(L::kInScc).as_flag()) {
        if (!c.self(L::kUndiscovered).as_flag()) c.set(L::kInScc, Cell::flag(false));
        return;
      }
      if (v == c.shared(L::kPivot).as_index()) {
        c.set(L::kFwd, Cell::index(v));
        c.set(L::kBwd, Cell::index(v));
        c.set(L::kInScc, Cell::flag(true));
        c.set(L::kSccPtr, Cell::index(v));
      }
    } else {
      search_layer(c, *g);
    }
  }

  void graph(GraphContext& gc) const {
    const std::size_t n = gc.width();
    const std::size_t mode = gc.shared(L::kMode).as_index();
    if (mode == L::kDone) return;
    if (selecting(mode, gc.shared(L::kChanged).as_flag())) {
      std::size_t pivot = n;
      for (ProcId v = 0; v < n && pivot == n; ++v)
        if (gc.node(v, L::kUndiscovered).as_flag() && !gc.node(v, L::kInScc).as_flag()) pivot = v;
      if (pivot == n) {
        gc.write_shared(L::kMode, Cell::index(L::kDone));
      } else {
        gc.write_shared(L::kPivot, Cell::index(pivot));
        gc.write_shared(L::kMode, Cell::index(L::kSource));
      }
    } else if (mode == L::kSource) {
      gc.write_shared(L::kMode, Cell::index(L::kSearch));
      gc.write_shared(L::kChanged, Cell::flag(true));
    } else {
      gc.write_shared(L::kChanged, Cell::flag(false));
    }
  }
};

struct BfsProgram {
  const Digraph* g;
  void node(NodeContext& c) const { search_layer(c, *g); }
};

MachineState scc_state(std::size_t n) {
  MachineState s(n, L::kRegisters, L::kShared);
  for (std::size_t v = 0; v < n; ++v) {
    s.set_local(v, L::kUndiscovered, Cell::flag(true));
    s.set_local(v, L::kFwd, Cell::index(n));
    s.set_local(v, L::kBwd, Cell::index(n));
    s.set_local(v, L::kInScc, Cell::flag(false));
    s.set_local(v, L::kSccPtr, Cell::index(v));
  }
  s.set_shared(L::kMode, Cell::index(L::kSelect));
  s.set_shared(L::kPivot, Cell::index(0));
  s.set_shared(L::kChanged, Cell::flag(false));
  return s;
}

// True when some alive node would lower its forward or backward value.
bool frontier_open(const MachineState& s, const Digraph& g) {
  auto alive = [&](std::size_t v) { return s.local(v, L::kUndiscovered).as_flag(); };
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (!alive(v)) continue;
    const std::size_t f = s.local(v, L::kFwd).as_index();
    const std::size_t b = s.local(v, L::kBwd).as_index();
    for (std::size_t u : g.in(v))
      if (alive(u) && s.local(u, L::kFwd).as_index() < f) return true;
    for (std::size_t w : g.out(v))
      if (alive(w) && s.local(w, L::kBwd).as_index() < b) return true;
  }
  return false;
}

}  // namespace

BfsResult bidirectional_bfs(const Digraph& g, std::size_t source, std::vector<bool> alive) {
  const std::size_t n = g.node_count();
  if (alive.empty()) alive.assign(n, true);
  if (alive.size() != n) throw std::invalid_argument("alive mask size differs from node count");
  if (source >= n || !alive[source]) throw std::invalid_argument("source must be an alive node");
  MachineState init = scc_state(n);
  for (std::size_t v = 0; v < n; ++v) init.set_local(v, L::kUndiscovered, Cell::flag(alive[v]));
  init.set_local(source, L::kFwd, Cell::index(source));
  init.set_local(source, L::kBwd, Cell::index(source));
  init.set_local(source, L::kInScc, Cell::flag(true));
  init.set_local(source, L::kSccPtr, Cell::index(source));
  init.set_shared(L::kMode, Cell::index(L::kSearch));
  init.set_shared(L::kPivot, Cell::index(source));
  init.set_shared(L::kChanged, Cell::flag(true));
  Trace t = run_machine(
      std::move(init), BfsProgram{&g}, g.interconnection(),
      [&g](const MachineState& s) { return !frontier_open(s, g); }, n + 1);
  t.set_algo_id("bidirectional_bfs");
  t.set_input_digest(digest(g));
  t.set_operated_graph(g.as_operated_graph());
  BfsResult r;
  const MachineState& fin = t.final_state();
  for (std::size_t v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    if (fin.local(v, L::kFwd).as_index() < n) r.descendants.push_back(v);
    if (fin.local(v, L::kBwd).as_index() < n) r.predecessors.push_back(v);
  }
  r.trace = std::move(t);
  return r;
}

Run<SccAssignment> dcsc(const Digraph& g) {
  const std::size_t n = g.node_count();
  Trace t = run_machine(
      scc_state(n), DcscProgram{&g}, g.interconnection(),
      [](const MachineState& s) { return s.shared(L::kMode).as_index() == L::kDone; },
      2 * n * n + 4 * n + 4);
  t.set_algo_id("dcsc");
  t.set_input_digest(digest(g));
  t.set_operated_graph(g.as_operated_graph());
  SccAssignment out;
  out.scc_ptr.resize(n);
  for (std::size_t v = 0; v < n; ++v) out.scc_ptr[v] = t.final_state().local(v, L::kSccPtr).as_index();
  return {std::move(out), std::move(t)};
}

}  // namespace pramtraj
