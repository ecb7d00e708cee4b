#include "pramtraj/machine.hpp"

#include <algorithm>
#include <sstream>

namespace pramtraj {

const char* Cell::kind_name() const {
  switch (kind_) {
    case Kind::undefined: return "undefined";
    case Kind::scalar: return "scalar";
    case Kind::index: return "index";
    default: return "flag";
  }
}

void Cell::mismatch(const char* expected) const {
  throw CellTypeError(std::string("cell holds ") + kind_name() + ", expected " + expected);
}

std::string Cell::to_string() const {
  std::ostringstream os;
  if (is_undefined()) {
    os << "_";
  } else if (is_scalar()) {
    os << as_scalar();
  } else if (is_index()) {
    os << '#' << as_index();
  } else {
    os << (as_flag() ? "T" : "F");
  }
  return os.str();
}

StepLimitExceeded::StepLimitExceeded(std::size_t max_steps)
    : std::runtime_error("halt predicate did not fire within " + std::to_string(max_steps) +
                         " steps"),
      max_steps_(max_steps) {}

MachineState::MachineState(std::size_t width, std::size_t registers, std::size_t shared_size)
    : width_(width), registers_(registers), local_(width * registers), shared_(shared_size) {}

void MachineState::set_local(ProcId proc, std::size_t reg, Cell value) {
  if (proc >= width_ || reg >= registers_) throw std::out_of_range("local cell out of range");
  local_[proc * registers_ + reg] = value;
}

void MachineState::set_shared(std::size_t addr, Cell value) {
  shared_.at(addr) = value;
}

namespace {

// Stable by (address, proc): insertion sort for the usual handful of
// requests, so a step allocates nothing.
void sort_requests(std::vector<WriteRequest>& r) {
  auto less = [](const WriteRequest& a, const WriteRequest& b) {
    return a.address != b.address ? a.address < b.address : a.proc < b.proc;
  };
  if (r.size() > 32) {
    std::stable_sort(r.begin(), r.end(), less);
    return;
  }
  for (std::size_t i = 1; i < r.size(); ++i)
    for (std::size_t j = i; j > 0 && less(r[j], r[j - 1]); --j) std::swap(r[j], r[j - 1]);
}

// Appends the winning write per address of already sorted requests.
void append_winners(const std::vector<WriteRequest>& sorted, std::vector<AppliedWrite>& out) {
  const std::size_t start = out.size();
  for (const WriteRequest& r : sorted)
    if (out.size() == start || out.back().address != r.address) out.push_back({r.address, r.value});
}

}  // namespace

std::vector<AppliedWrite> resolve_writes(std::span<const WriteRequest> requests) {
  std::vector<WriteRequest> sorted(requests.begin(), requests.end());
  sort_requests(sorted);
  std::vector<AppliedWrite> out;
  append_winners(sorted, out);
  return out;
}

ActivityRecord ActivityView::to_record() const {
  ActivityRecord r;
  r.step = step;
  r.active_nodes.assign(active_nodes.begin(), active_nodes.end());
  r.active_edges.assign(active_edges.begin(), active_edges.end());
  r.op_count = op_count;
  r.graph_op = graph_op;
  return r;
}

void detail::StepScratch::clear() {
  local_writes.resize(local_base);
  applied_shared.resize(shared_base);
  active_nodes.resize(node_base);
  active_edges.resize(edge_base);
  requests.clear();
  graph_writes.clear();
  reads.clear();
  enabled.clear();
  graph_active = false;
}

void detail::StepScratch::commit() {
  node_base = active_nodes.size();
  edge_base = active_edges.size();
  local_base = local_writes.size();
  shared_base = applied_shared.size();
}

// ---- NodeContext -----------------------------------------------------------

void NodeContext::no_self_loop() const {
  throw NeighborhoodViolation("processor " + std::to_string(id_) + " has no self-loop");
}

void NodeContext::outside(ProcId j) const {
  throw NeighborhoodViolation("processor " + std::to_string(id_) + " read processor " +
                              std::to_string(j) + " outside its neighbourhood");
}

void NodeContext::out_of_range(const char* what) {
  throw std::out_of_range(std::string(what) + " out of range");
}

// ---- GraphContext ----------------------------------------------------------

const Cell& GraphContext::shared(std::size_t addr) {
  if (addr >= state_.shared_size()) throw std::out_of_range("shared address out of range");
  const Cell& c = state_.shared(addr);
  undefined_read_ = undefined_read_ || c.is_undefined();
  return c;
}

const Cell& GraphContext::node(ProcId j, std::size_t reg) {
  if (j >= state_.width() || reg >= state_.registers())
    throw std::out_of_range("graph-level read out of range");
  reads_.push_back(j);
  const Cell& c = state_.local(j, reg);
  undefined_read_ = undefined_read_ || c.is_undefined();
  return c;
}

void GraphContext::write_shared(std::size_t addr, Cell value) {
  if (addr >= state_.shared_size()) throw std::out_of_range("shared address out of range");
  scratch_.graph_writes.push_back({addr, value});
  active_ = true;
}

// ---- StepEngine ------------------------------------------------------------

void StepEngine::finish_node(NodeContext& ctx, detail::StepScratch& scratch) {
  auto& writes = scratch.local_writes;
  // Keep the last write per register and drop writes that restore the old value.
  std::size_t out = ctx.first_local_write_;
  for (std::size_t k = ctx.first_local_write_; k < writes.size(); ++k) {
    bool superseded = false;
    for (std::size_t later = k + 1; later < writes.size() && !superseded; ++later)
      superseded = writes[later].reg == writes[k].reg;
    if (superseded || writes[k].value == ctx.state_.local(writes[k].proc, writes[k].reg)) continue;
    writes[out++] = writes[k];
    ctx.changed_ = true;
  }
  writes.resize(out);

  auto& reads = scratch.reads;
  auto rbegin = reads.begin() + static_cast<std::ptrdiff_t>(ctx.first_read_);
  const bool active = ctx.changed_ || ctx.explicit_op_ || ctx.shared_write_;
  if (active) {
    if (ctx.undefined_read_)
      throw UndefinedRead("processor " + std::to_string(ctx.id_) +
                          " operated on an undefined cell");
    scratch.active_nodes.push_back(ctx.id_);
    if (reads.end() - rbegin > 16) {
      std::sort(rbegin, reads.end());
    } else {
      for (auto it = rbegin + (rbegin != reads.end()); it < reads.end(); ++it)
        for (auto j = it; j != rbegin && *j < *(j - 1); --j) std::iter_swap(j, j - 1);
    }
    for (auto it = rbegin; it != reads.end(); ++it)
      if (it == rbegin || *it != *(it - 1)) scratch.active_edges.push_back({*it, ctx.id_, false});
    if (ctx.shared_read_) scratch.active_edges.push_back({kGraphNode, ctx.id_, true});
    if (ctx.shared_write_) scratch.active_edges.push_back({ctx.id_, kGraphNode, true});
  }
  reads.erase(rbegin, reads.end());
}

void StepEngine::finish_graph(GraphContext& g, detail::StepScratch& scratch) {
  if (!g.active_) return;
  if (g.undefined_read_) throw UndefinedRead("graph-level feature operated on an undefined cell");
  scratch.graph_active = true;
  std::sort(g.reads_.begin(), g.reads_.end());
  g.reads_.erase(std::unique(g.reads_.begin(), g.reads_.end()), g.reads_.end());
  for (ProcId j : g.reads_) scratch.active_edges.push_back({j, kGraphNode, true});
}

void StepEngine::apply(MachineState& state, detail::StepScratch& scratch) {
  const auto& writes = scratch.local_writes;
  for (std::size_t k = scratch.local_base; k < writes.size(); ++k)
    state.set_local(writes[k].proc, writes[k].reg, writes[k].value);
  auto& applied = scratch.applied_shared;
  const std::size_t base = scratch.shared_base;
  sort_requests(scratch.requests);
  append_winners(scratch.requests, applied);
  const std::size_t proc_end = applied.size();
  // Graph-level writes only land where no processor wrote; the last one wins.
  for (std::size_t k = scratch.graph_writes.size(); k-- > 0;) {
    const auto& w = scratch.graph_writes[k];
    bool taken = false;
    for (std::size_t a = base; a < applied.size() && !taken; ++a) taken = applied[a].address == w.address;
    if (!taken) applied.push_back(w);
  }
  if (applied.size() != proc_end)
    std::sort(applied.begin() + static_cast<std::ptrdiff_t>(base), applied.end(),
              [](const AppliedWrite& a, const AppliedWrite& b) { return a.address < b.address; });
  for (std::size_t a = base; a < applied.size(); ++a) state.set_shared(applied[a].address, applied[a].value);
  state.advance_clock();
}

// ---- Trace -----------------------------------------------------------------

void Trace::apply_step(MachineState& s, std::size_t index) const {
  const StepRecord& r = steps_[index];
  const bool last = index + 1 == steps_.size();
  std::size_t local_end = last ? local_writes_.size() : steps_[index + 1].local_offset;
  std::size_t shared_end = last ? shared_writes_.size() : steps_[index + 1].shared_offset;
  for (std::size_t k = r.local_offset; k < local_end; ++k) {
    const auto& w = local_writes_[k];
    s.set_local(w.proc, w.reg, w.value);
  }
  for (std::size_t k = r.shared_offset; k < shared_end; ++k)
    s.set_shared(shared_writes_[k].address, shared_writes_[k].value);
  s.advance_clock();
}

MachineState Trace::state(std::size_t t) const {
  if (t > depth()) throw std::out_of_range("trace state index out of range");
  if (t == depth()) return final_;
  MachineState s = initial_;
  for (std::size_t k = 0; k < t; ++k) apply_step(s, k);
  return s;
}

std::vector<MachineState> Trace::states() const {
  std::vector<MachineState> out;
  out.reserve(depth() + 1);
  for_each_state([&](std::size_t, const MachineState& s) { out.push_back(s); });
  return out;
}

void Trace::for_each_state(
    const std::function<void(std::size_t, const MachineState&)>& f) const {
  MachineState s = initial_;
  f(0, s);
  for (std::size_t k = 0; k < depth(); ++k) {
    apply_step(s, k);
    f(k + 1, s);
  }
}

ActivityView Trace::activity(std::size_t index) const {
  if (index >= depth()) throw std::out_of_range("activity index out of range");
  const StepRecord& r = steps_[index];
  const bool last = index + 1 == steps_.size();
  std::size_t node_end = last ? nodes_.size() : steps_[index + 1].node_offset;
  std::size_t edge_end = last ? edges_.size() : steps_[index + 1].edge_offset;
  ActivityView v;
  v.step = index + 1;
  v.active_nodes = std::span<const ProcId>(nodes_).subspan(r.node_offset, node_end - r.node_offset);
  v.active_edges =
      std::span<const ActiveEdge>(edges_).subspan(r.edge_offset, edge_end - r.edge_offset);
  v.graph_op = r.graph_op;
  v.op_count = v.active_nodes.size() + (r.graph_op ? 1 : 0);
  return v;
}

std::span<const detail::LocalWrite> Trace::local_writes(std::size_t index) const {
  if (index >= depth()) throw std::out_of_range("step index out of range");
  std::size_t begin = steps_[index].local_offset;
  std::size_t end = index + 1 == steps_.size() ? local_writes_.size() : steps_[index + 1].local_offset;
  return std::span<const detail::LocalWrite>(local_writes_).subspan(begin, end - begin);
}

std::span<const AppliedWrite> Trace::shared_writes(std::size_t index) const {
  if (index >= depth()) throw std::out_of_range("step index out of range");
  std::size_t begin = steps_[index].shared_offset;
  std::size_t end =
      index + 1 == steps_.size() ? shared_writes_.size() : steps_[index + 1].shared_offset;
  return std::span<const AppliedWrite>(shared_writes_).subspan(begin, end - begin);
}

TraceRecorder::TraceRecorder(const MachineState& initial, std::size_t step_hint) {
  trace_.initial_ = initial;
  trace_.steps_.reserve(std::min<std::size_t>(step_hint, 1 << 16));
  // Rough per-step guess; growth beyond it is amortised as usual.
  const std::size_t guess = std::min<std::size_t>(step_hint * (initial.width() + 2), 1 << 15);
  scratch_.active_nodes.reserve(guess);
  scratch_.active_edges.reserve(2 * guess);
  scratch_.local_writes.reserve(guess);
}

void TraceRecorder::record() {
  Trace::StepRecord r;
  r.node_offset = scratch_.node_base;
  r.edge_offset = scratch_.edge_base;
  r.local_offset = scratch_.local_base;
  r.shared_offset = scratch_.shared_base;
  r.graph_op = scratch_.graph_active;
  trace_.steps_.push_back(r);
  scratch_.commit();
}

Trace TraceRecorder::finish(const MachineState& final_state) && {
  scratch_.clear();
  trace_.nodes_ = std::move(scratch_.active_nodes);
  trace_.edges_ = std::move(scratch_.active_edges);
  trace_.local_writes_ = std::move(scratch_.local_writes);
  trace_.shared_writes_ = std::move(scratch_.applied_shared);
  trace_.final_ = final_state;
  return std::move(trace_);
}

}  // namespace pramtraj
