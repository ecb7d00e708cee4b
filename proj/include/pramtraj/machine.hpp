#pragma once

// Discrete-step priority CRCW machine. Processors read their own memory, the
// local memory of in-neighbours in the interconnection graph and the shared
// memory (the graph-level feature); all reads observe the state of the
// previous step and all writes land together at the end of the step.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pramtraj/cell.hpp"
#include "pramtraj/graph.hpp"

namespace pramtraj {

/// Pseudo-node id standing for the shared memory in activity records.
inline constexpr ProcId kGraphNode = std::numeric_limits<ProcId>::max();

class NeighborhoodViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class UndefinedRead : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class StepLimitExceeded : public std::runtime_error {
 public:
  explicit StepLimitExceeded(std::size_t max_steps);
  std::size_t max_steps() const { return max_steps_; }

 private:
  std::size_t max_steps_;
};

class MachineState {
 public:
  MachineState() = default;
  MachineState(std::size_t width, std::size_t registers, std::size_t shared_size);

  std::size_t width() const { return width_; }
  std::size_t registers() const { return registers_; }
  std::size_t shared_size() const { return shared_.size(); }
  std::uint64_t clock() const { return clock_; }

  std::span<const Cell> local(ProcId proc) const {
    return {local_.data() + proc * registers_, registers_};
  }
  const Cell& local(ProcId proc, std::size_t reg) const { return local_[proc * registers_ + reg]; }
  const Cell& shared(std::size_t addr) const { return shared_[addr]; }
  std::span<const Cell> shared() const { return shared_; }

  void set_local(ProcId proc, std::size_t reg, Cell value);
  void set_shared(std::size_t addr, Cell value);
  void advance_clock() { ++clock_; }

  bool operator==(const MachineState&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t registers_ = 0;
  std::vector<Cell> local_;
  std::vector<Cell> shared_;
  std::uint64_t clock_ = 0;
};

struct WriteRequest {
  ProcId proc = 0;
  std::size_t address = 0;
  Cell value;
};

struct AppliedWrite {
  std::size_t address = 0;
  Cell value;
  bool operator==(const AppliedWrite&) const = default;
};

/// Priority CRCW resolution: for every written address the request of the
/// lowest processor index wins. Output is sorted by address.
std::vector<AppliedWrite> resolve_writes(std::span<const WriteRequest> requests);

// Trivial on purpose so traces grow with plain memory moves.
struct ActiveEdge {
  ProcId from;
  ProcId to;
  /// Node <-> shared-memory pseudo-edge; one endpoint is kGraphNode.
  bool graph_level;
  auto operator<=>(const ActiveEdge&) const = default;
};

/// Activity of one step, owning its storage.
struct ActivityRecord {
  std::uint64_t step = 0;
  std::vector<ProcId> active_nodes;
  std::vector<ActiveEdge> active_edges;
  std::size_t op_count = 0;
  bool graph_op = false;
  bool operator==(const ActivityRecord&) const = default;
};

/// Non-owning view of one step's activity inside a Trace.
struct ActivityView {
  std::uint64_t step = 0;
  std::span<const ProcId> active_nodes;
  std::span<const ActiveEdge> active_edges;
  std::size_t op_count = 0;
  bool graph_op = false;

  ActivityRecord to_record() const;
};

namespace detail {

struct LocalWrite {
  ProcId proc = 0;
  std::size_t reg = 0;
  Cell value;
  bool operator==(const LocalWrite&) const = default;
};

struct StepScratch {
  std::vector<LocalWrite> local_writes;
  std::vector<WriteRequest> requests;
  std::vector<AppliedWrite> graph_writes;
  std::vector<AppliedWrite> applied_shared;
  std::vector<ProcId> reads;
  std::vector<ProcId> enabled;
  std::vector<ProcId> active_nodes;
  std::vector<ActiveEdge> active_edges;
  bool graph_active = false;
  // Entries before these offsets belong to committed earlier steps; a
  // recorder keeps a whole run in one scratch to avoid copying.
  std::size_t node_base = 0;
  std::size_t edge_base = 0;
  std::size_t local_base = 0;
  std::size_t shared_base = 0;

  /// Drops the uncommitted step.
  void clear();
  /// Keeps the current step and starts a new one.
  void commit();
};

}  // namespace detail

/// Per-processor view handed to a step program. Every read is recorded; when
/// the processor ends up executing an operation the recorded reads become the
/// step's active edges.
class NodeContext {
 public:
  NodeContext(const MachineState& state, const InterconnectionGraph& graph, ProcId id,
              detail::StepScratch& scratch)
      : state_(state), graph_(graph), id_(id), scratch_(scratch) {}

  ProcId id() const { return id_; }
  std::uint64_t clock() const { return state_.clock(); }
  std::size_t width() const { return state_.width(); }

  const Cell& self(std::size_t reg) {
    if (!graph_.has_self_loop(id_)) no_self_loop();
    if (reg >= state_.registers()) out_of_range("register");
    record_read(id_);
    return note(state_.local(id_, reg));
  }
  const Cell& neighbor(ProcId j, std::size_t reg) {
    if (j == id_) return self(reg);
    if (j >= state_.width()) out_of_range("neighbor index");
    if (!graph_.has_edge(j, id_)) outside(j);
    if (reg >= state_.registers()) out_of_range("register");
    record_read(j);
    return note(state_.local(j, reg));
  }
  const Cell& shared(std::size_t addr) {
    if (addr >= state_.shared_size()) out_of_range("shared address");
    shared_read_ = true;
    return note(state_.shared(addr));
  }

  void set(std::size_t reg, Cell value) {
    if (reg >= state_.registers()) out_of_range("register");
    scratch_.local_writes.push_back({id_, reg, value});
  }
  void write_shared(std::size_t addr, Cell value) {
    if (addr >= state_.shared_size()) out_of_range("shared address");
    scratch_.requests.push_back({id_, addr, value});
    shared_write_ = true;
  }
  /// Declares an operation that leaves the local state unchanged (a
  /// comparison that decides not to swap, for instance).
  void mark_active() { explicit_op_ = true; }

 private:
  friend class StepEngine;
  void record_read(ProcId j) {
    auto& r = scratch_.reads;
    if (r.size() == first_read_ || r.back() != j) r.push_back(j);
  }
  [[noreturn]] void no_self_loop() const;
  [[noreturn]] void outside(ProcId j) const;
  [[noreturn]] static void out_of_range(const char* what);

  const Cell& note(const Cell& c) {
    undefined_read_ = undefined_read_ || c.is_undefined();
    return c;
  }

  const MachineState& state_;
  const InterconnectionGraph& graph_;
  ProcId id_;
  detail::StepScratch& scratch_;
  std::size_t first_read_ = 0;
  std::size_t first_local_write_ = 0;
  bool changed_ = false;
  bool explicit_op_ = false;
  bool shared_read_ = false;
  bool shared_write_ = false;
  bool undefined_read_ = false;
};

/// View for the graph-level feature. It may read any node (recorded as
/// graph-level pseudo-edges) and write the shared memory; its writes have
/// lower priority than any processor's.
class GraphContext {
 public:
  GraphContext(const MachineState& state, detail::StepScratch& scratch)
      : state_(state), scratch_(scratch) {}

  std::uint64_t clock() const { return state_.clock(); }
  std::size_t width() const { return state_.width(); }
  const Cell& shared(std::size_t addr);
  const Cell& node(ProcId j, std::size_t reg);
  void write_shared(std::size_t addr, Cell value);
  void mark_active() { active_ = true; }

 private:
  friend class StepEngine;
  const MachineState& state_;
  detail::StepScratch& scratch_;
  std::vector<ProcId> reads_;
  bool active_ = false;
  bool undefined_read_ = false;
};

/// A layer program. `node` is the per-processor transition; optional members:
///   void graph(GraphContext&) const           graph-level feature update
///   void enabled(const MachineState&, std::vector<ProcId>&) const
///       processors the program addresses this step (ascending); the others
///       execute the identity. Must depend on shared memory and clock only.
template <class P>
concept StepProgram = requires(const P& p, NodeContext& ctx) {
  { p.node(ctx) };
};

template <class P>
concept HasGraphOp = requires(const P& p, GraphContext& g) {
  { p.graph(g) };
};

template <class P>
concept HasEnabledSet = requires(const P& p, const MachineState& s, std::vector<ProcId>& out) {
  { p.enabled(s, out) };
};

/// Applies one synchronous step in place and fills `scratch` with what
/// happened. Used by step_machine and run_machine.
class StepEngine {
 public:
  template <StepProgram P>
  static void step(MachineState& state, const P& program, const InterconnectionGraph& graph,
                   detail::StepScratch& scratch) {
    scratch.clear();
    if (graph.node_count() != state.width())
      throw std::invalid_argument("interconnection graph size differs from machine width");
    if constexpr (HasEnabledSet<P>) {
      program.enabled(state, scratch.enabled);
      for (ProcId i : scratch.enabled) run_node(state, program, graph, i, scratch);
    } else {
      for (ProcId i = 0; i < state.width(); ++i) run_node(state, program, graph, i, scratch);
    }
    if constexpr (HasGraphOp<P>) {
      GraphContext g(state, scratch);
      try {
        program.graph(g);
      } catch (const CellTypeError&) {
        if (g.undefined_read_) throw UndefinedRead("graph-level feature operated on an undefined cell");
        throw;
      }
      finish_graph(g, scratch);
    }
    apply(state, scratch);
  }

 private:
  template <StepProgram P>
  static void run_node(const MachineState& state, const P& program,
                       const InterconnectionGraph& graph, ProcId i,
                       detail::StepScratch& scratch) {
    if (i >= state.width()) throw std::out_of_range("enabled processor out of range");
    NodeContext ctx(state, graph, i, scratch);
    ctx.first_read_ = scratch.reads.size();
    ctx.first_local_write_ = scratch.local_writes.size();
    try {
      program.node(ctx);
    } catch (const CellTypeError&) {
      // Undefined cells only fail once the program looks inside them.
      if (ctx.undefined_read_) throw UndefinedRead("processor " + std::to_string(i) + " operated on an undefined cell");
      throw;
    }
    finish_node(ctx, scratch);
  }

  static void finish_node(NodeContext& ctx, detail::StepScratch& scratch);
  static void finish_graph(GraphContext& g, detail::StepScratch& scratch);
  static void apply(MachineState& state, detail::StepScratch& scratch);
};

/// Single step on a copy of `state`.
template <StepProgram P>
std::pair<MachineState, ActivityRecord> step_machine(const MachineState& state, const P& program,
                                                     const InterconnectionGraph& graph) {
  MachineState next = state;
  detail::StepScratch scratch;
  StepEngine::step(next, program, graph, scratch);
  ActivityRecord rec;
  rec.step = next.clock();
  rec.active_nodes = scratch.active_nodes;
  rec.active_edges = scratch.active_edges;
  rec.graph_op = scratch.graph_active;
  rec.op_count = scratch.active_nodes.size() + (scratch.graph_active ? 1 : 0);
  return {std::move(next), std::move(rec)};
}

/// Immutable record of a run. States are stored as the initial snapshot plus
/// per-step deltas; snapshots are materialised on request.
class Trace {
 public:
  std::size_t width() const { return initial_.width(); }
  std::size_t depth() const { return steps_.size(); }
  const std::string& algo_id() const { return algo_id_; }
  std::uint64_t input_digest() const { return input_digest_; }

  const MachineState& initial_state() const { return initial_; }
  const MachineState& final_state() const { return final_; }
  /// Snapshot after `t` steps, 0 <= t <= depth().
  MachineState state(std::size_t t) const;
  /// All depth()+1 snapshots.
  std::vector<MachineState> states() const;
  /// Calls f(t, state) for t = 0..depth() without storing snapshots.
  void for_each_state(const std::function<void(std::size_t, const MachineState&)>& f) const;

  /// Activity of step t+1 (0-based index into the step list).
  ActivityView activity(std::size_t index) const;
  /// Local cells changed by step t+1.
  std::span<const detail::LocalWrite> local_writes(std::size_t index) const;
  /// Shared cells written by step t+1.
  std::span<const AppliedWrite> shared_writes(std::size_t index) const;

  /// Graph whose edges form the edge-efficiency denominator.
  const InterconnectionGraph& operated_graph() const { return operated_; }

  void set_algo_id(std::string id) { algo_id_ = std::move(id); }
  void set_input_digest(std::uint64_t d) { input_digest_ = d; }
  void set_operated_graph(InterconnectionGraph g) { operated_ = std::move(g); }

  bool operator==(const Trace&) const = default;

 private:
  friend class TraceRecorder;
  struct StepRecord {
    std::size_t node_offset = 0;
    std::size_t edge_offset = 0;
    std::size_t local_offset = 0;
    std::size_t shared_offset = 0;
    bool graph_op = false;
    bool operator==(const StepRecord&) const = default;
  };
  void apply_step(MachineState& s, std::size_t index) const;

  std::string algo_id_;
  std::uint64_t input_digest_ = 0;
  MachineState initial_;
  MachineState final_;
  InterconnectionGraph operated_;
  std::vector<StepRecord> steps_;
  std::vector<ProcId> nodes_;
  std::vector<ActiveEdge> edges_;
  std::vector<detail::LocalWrite> local_writes_;
  std::vector<AppliedWrite> shared_writes_;
};

/// Collects a run step by step. Steps are executed into scratch() and kept
/// with record().
class TraceRecorder {
 public:
  /// `step_hint` pre-sizes the step list; it does not limit the run.
  explicit TraceRecorder(const MachineState& initial, std::size_t step_hint = 0);
  detail::StepScratch& scratch() { return scratch_; }
  void record();
  Trace finish(const MachineState& final_state) &&;

 private:
  Trace trace_;
  detail::StepScratch scratch_;
};

/// Steps until `halt(state)` holds. Throws StepLimitExceeded when it has not
/// fired after `max_steps` steps.
template <StepProgram P, class Halt>
Trace run_machine(MachineState initial, const P& program, const InterconnectionGraph& graph,
                  Halt&& halt, std::size_t max_steps) {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
  TraceRecorder recorder(initial, max_steps);
  MachineState state = std::move(initial);
  std::size_t taken = 0;
  while (!halt(static_cast<const MachineState&>(state))) {
    if (taken == max_steps) throw StepLimitExceeded(max_steps);
    StepEngine::step(state, program, graph, recorder.scratch());
    recorder.record();
    ++taken;
  }
  return std::move(recorder).finish(state);
}

}  // namespace pramtraj
