#include "pramtraj/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "pramtraj/efficiency.hpp"
#include "pramtraj/random.hpp"

namespace pramtraj {

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::input: return "input";
    case Stage::hint: return "hint";
    default: return "output";
  }
}

std::string_view to_string(Location l) {
  switch (l) {
    case Location::node: return "node";
    case Location::edge: return "edge";
    default: return "graph";
  }
}

std::string_view to_string(DType d) {
  switch (d) {
    case DType::scalar: return "scalar";
    case DType::mask: return "mask";
    default: return "categorical";
  }
}

std::vector<ProbeSpec> probe_spec(Algorithm algo) {
  using S = Stage;
  using L = Location;
  using D = DType;
  std::vector<ProbeSpec> p;
  auto add = [&](std::string name, S s, L l, D d, std::size_t extra = 0) {
    p.push_back({std::move(name), s, l, d, extra});
  };
  switch (task_of(algo)) {
    case Task::search:
      add("items", S::input, L::node, D::scalar);
      add("x", S::input, L::graph, D::scalar);
      add("pos", S::input, L::node, D::scalar);
      if (algo == Algorithm::parallel_search) {
        add("leq_mask", S::hint, L::node, D::mask);
      } else {
        add("low", S::hint, L::node, D::mask);
        add("high", S::hint, L::node, D::mask);
        add("mid", S::hint, L::node, D::mask);
      }
      add("rank", S::output, L::graph, D::categorical, 1);
      break;
    case Task::sort:
      add("items", S::input, L::node, D::scalar);
      add("pos", S::input, L::node, D::scalar);
      add("pred", S::hint, L::node, D::categorical);
      add("swap_mask", S::hint, L::edge, D::mask);
      if (algo == Algorithm::oets) {
        add("parity", S::hint, L::graph, D::mask);
      } else {
        add("i", S::hint, L::graph, D::categorical);
        add("j", S::hint, L::graph, D::categorical);
      }
      add("pred", S::output, L::node, D::categorical);
      break;
    case Task::scc:
      add("adj_undirected", S::input, L::edge, D::mask);
      add("adj_directed", S::input, L::edge, D::scalar);
      add("pos", S::input, L::node, D::scalar);
      if (algo == Algorithm::dcsc) {
        add("reach_fwd", S::hint, L::node, D::mask);
        add("reach_bwd", S::hint, L::node, D::mask);
        add("in_scc", S::hint, L::node, D::mask);
        add("undiscovered", S::hint, L::node, D::mask);
      } else {
        add("visited_1", S::hint, L::node, D::mask);
        add("finished_1", S::hint, L::node, D::mask);
        add("visited_2", S::hint, L::node, D::mask);
        add("finish_pred", S::hint, L::node, D::categorical);
      }
      add("scc_ptr", S::hint, L::node, D::categorical);
      add("scc_ptr", S::output, L::node, D::categorical);
      break;
  }
  return p;
}

std::vector<ProbeSpec> probe_spec(std::string_view algo_id) {
  return probe_spec(parse_algorithm(algo_id));
}

ActivitySummary summarize_activity(const Trace& trace) {
  ActivitySummary a;
  a.width = trace.width();
  a.m = trace.operated_graph().edge_count();
  a.steps.reserve(trace.depth());
  for (std::size_t k = 0; k < trace.depth(); ++k) {
    const ActivityView v = trace.activity(k);
    StepActivity s;
    s.nodes = v.active_nodes.size();
    for (const ActiveEdge& e : v.active_edges) ++(e.graph_level ? s.graph_edges : s.edges);
    s.ops = v.op_count;
    s.graph_op = v.graph_op;
    s.a = operated_active_edges(trace, k);
    a.steps.push_back(s);
  }
  return a;
}

namespace {

Field node_field(std::vector<double> v) { return {Location::node, std::move(v)}; }
Field graph_field(double v) { return {Location::graph, {v}}; }
double b2d(bool b) { return b ? 1.0 : 0.0; }

std::vector<double> pred_values(const std::vector<std::size_t>& order) {
  const auto p = PredecessorPointers::from_order(order);
  return {p.pred.begin(), p.pred.end()};
}

std::vector<std::size_t> arrangement(const MachineState& s) {
  std::vector<std::size_t> a(s.width());
  for (std::size_t k = 0; k < s.width(); ++k)
    a[k] = s.local(k, layout::sort::kItem).as_index();
  return a;
}

// Reads an index cell, treating undefined as "not yet set" = `fallback`.
std::size_t index_or(const Cell& c, std::size_t fallback) {
  return c.is_index() ? c.as_index() : fallback;
}

void encode_inputs(Task task, const Instance& inst, std::size_t n, std::uint64_t seed,
                   Sample& s) {
  s.inputs["pos"] = node_field(positional_scalars(n, seed));
  switch (task) {
    case Task::search: {
      const auto& si = std::get<SearchInstance>(inst);
      s.inputs["items"] = node_field(si.items);
      s.inputs["x"] = graph_field(si.x);
      break;
    }
    case Task::sort:
      s.inputs["items"] = node_field(std::get<SortInstance>(inst).items);
      break;
    case Task::scc: {
      const auto& g = std::get<Digraph>(inst);
      Field und{Location::edge, std::vector<double>(n * n, 0.0)};
      Field dir{Location::edge, std::vector<double>(n * n, 0.0)};
      for (const Edge& e : g.edges()) {
        dir.values[e.from * n + e.to] = 1.0;
        und.values[e.from * n + e.to] = 1.0;
        und.values[e.to * n + e.from] = 1.0;
      }
      s.inputs["adj_undirected"] = std::move(und);
      s.inputs["adj_directed"] = std::move(dir);
      break;
    }
  }
}

void encode_hints(Algorithm algo, const Instance& inst, const Trace& trace, Sample& s) {
  const std::size_t n = s.n;
  MachineState prev;
  trace.for_each_state([&](std::size_t t, const MachineState& st) {
    if (t == 0) {
      prev = st;
      return;
    }
    HintFrame f;
    f.step = t;
    switch (algo) {
      case Algorithm::parallel_search: {
        std::vector<double> mask(n);
        for (std::size_t i = 0; i < n; ++i) {
          const Cell& h = st.local(i, layout::search::kAux);
          mask[i] = b2d(h.is_scalar() && h.as_scalar() == 0.0);
        }
        f.values["leq_mask"] = node_field(std::move(mask));
        break;
      }
      case Algorithm::binary_search: {
        const std::size_t low = st.shared(layout::search::kLow).as_index();
        const std::size_t high = st.shared(layout::search::kHigh).as_index();
        const std::size_t mid = (prev.shared(layout::search::kLow).as_index() +
                                 prev.shared(layout::search::kHigh).as_index()) / 2;
        std::vector<double> lo(n, 0.0), hi(n, 0.0), md(n, 0.0);
        if (low < n) lo[low] = 1.0;
        if (high < n) hi[high] = 1.0;
        if (mid < n) md[mid] = 1.0;
        f.values["low"] = node_field(std::move(lo));
        f.values["high"] = node_field(std::move(hi));
        f.values["mid"] = node_field(std::move(md));
        break;
      }
      case Algorithm::oets:
      case Algorithm::bubble_sort: {
        const auto before = arrangement(prev);
        const auto after = arrangement(st);
        f.values["pred"] = node_field(pred_values(after));
        Field swaps{Location::edge, std::vector<double>(n * n, 0.0)};
        for (std::size_t k = 0; k + 1 < n; ++k) {
          if (before[k] != after[k] && before[k] == after[k + 1]) {
            const std::size_t u = before[k], v = before[k + 1];
            swaps.values[u * n + v] = swaps.values[v * n + u] = 1.0;
            ++k;
          }
        }
        f.values["swap_mask"] = std::move(swaps);
        if (algo == Algorithm::oets) {
          f.values["parity"] = graph_field(b2d(st.shared(layout::sort::kParity).as_flag()));
        } else {
          f.values["i"] = graph_field(static_cast<double>(prev.shared(layout::sort::kPass).as_index()));
          f.values["j"] = graph_field(static_cast<double>(prev.shared(layout::sort::kPos).as_index()));
        }
        break;
      }
      case Algorithm::dcsc: {
        namespace L = layout::scc;
        std::vector<double> fw(n), bw(n), in(n), und(n), ptr(n);
        for (std::size_t v = 0; v < n; ++v) {
          fw[v] = b2d(st.local(v, L::kFwd).as_index() < n);
          bw[v] = b2d(st.local(v, L::kBwd).as_index() < n);
          in[v] = b2d(st.local(v, L::kInScc).as_flag());
          und[v] = b2d(st.local(v, L::kUndiscovered).as_flag());
          ptr[v] = static_cast<double>(st.local(v, L::kSccPtr).as_index());
        }
        f.values["reach_fwd"] = node_field(std::move(fw));
        f.values["reach_bwd"] = node_field(std::move(bw));
        f.values["in_scc"] = node_field(std::move(in));
        f.values["undiscovered"] = node_field(std::move(und));
        f.values["scc_ptr"] = node_field(std::move(ptr));
        break;
      }
      case Algorithm::kosaraju: {
        namespace L = layout::dfs;
        std::vector<double> v1(n), f1(n), v2(n), fp(n), ptr(n);
        // finish_pred: the node finished directly before, self for the first
        // finished node and for nodes not finished yet.
        std::vector<std::size_t> by_rank(n, n);
        for (std::size_t v = 0; v < n; ++v) {
          const std::size_t c1 = st.local(v, L::kColor1).as_index();
          v1[v] = b2d(c1 != L::kWhite);
          f1[v] = b2d(c1 == L::kBlack);
          v2[v] = b2d(st.local(v, L::kColor2).as_index() != L::kWhite);
          ptr[v] = static_cast<double>(st.local(v, L::kSccPtr).as_index());
          const std::size_t r = index_or(st.local(v, L::kFinish), n);
          if (r < n) by_rank[r] = v;
        }
        for (std::size_t v = 0; v < n; ++v) {
          const std::size_t r = index_or(st.local(v, L::kFinish), n);
          fp[v] = static_cast<double>(r == 0 || r >= n ? v : by_rank[r - 1]);
        }
        f.values["visited_1"] = node_field(std::move(v1));
        f.values["finished_1"] = node_field(std::move(f1));
        f.values["visited_2"] = node_field(std::move(v2));
        f.values["finish_pred"] = node_field(std::move(fp));
        f.values["scc_ptr"] = node_field(std::move(ptr));
        break;
      }
    }
    s.hints.push_back(std::move(f));
    prev = st;
  });
  (void)inst;
}

void encode_outputs(const Output& out, Sample& s) {
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Rank>) {
          s.outputs["rank"] = graph_field(static_cast<double>(o.value));
        } else if constexpr (std::is_same_v<T, PredecessorPointers>) {
          s.outputs["pred"] = node_field({o.pred.begin(), o.pred.end()});
        } else {
          s.outputs["scc_ptr"] = node_field({o.scc_ptr.begin(), o.scc_ptr.end()});
        }
      },
      out);
}

}  // namespace

Sample encode_sample(Algorithm algo, const Instance& inst, const AlgorithmRun& run,
                     std::uint64_t seed) {
  const Task task = task_of(algo);
  if (run.algo != algo || run.trace.algo_id() != algorithm_id(algo))
    throw SchemaMismatch("trace was produced by '" + run.trace.algo_id() + "', not '" +
                         std::string(algorithm_id(algo)) + "'");
  if (run.trace.input_digest() != digest(inst))
    throw SchemaMismatch("trace does not belong to the given instance");
  Sample s;
  s.algo = std::string(algorithm_id(algo));
  s.n = task == Task::search ? run.trace.width() - 1 : run.trace.width();
  s.seed = seed;
  encode_inputs(task, inst, s.n, seed, s);
  try {
    encode_hints(algo, inst, run.trace, s);
  } catch (const CellTypeError& e) {
    throw SchemaMismatch(std::string("trace state lacks a probe value: ") + e.what());
  }
  encode_outputs(run.output, s);
  s.activity = summarize_activity(run.trace);
  return s;
}

// ---- validation ------------------------------------------------------------

namespace {

struct Checker {
  const Sample& s;
  std::vector<std::string>& out;

  void add(const std::string& category, const std::string& detail) {
    out.push_back(category + ": " + detail);
  }

  std::size_t expected_size(Location l) const {
    switch (l) {
      case Location::node: return s.n;
      case Location::edge: return s.n * s.n;
      default: return 1;
    }
  }

  void field(const ProbeSpec& p, const Field& f, const std::string& where) {
    if (f.location != p.location) {
      add("shape", where + " '" + p.name + "' is at " + std::string(to_string(f.location)) +
                       ", expected " + std::string(to_string(p.location)));
      return;
    }
    if (f.values.size() != expected_size(p.location)) {
      add("shape", where + " '" + p.name + "' has " + std::to_string(f.values.size()) +
                       " values, expected " + std::to_string(expected_size(p.location)));
      return;
    }
    for (double v : f.values) {
      if (!std::isfinite(v)) {
        add("shape", where + " '" + p.name + "' holds a non-finite value");
        return;
      }
      if (p.dtype == DType::mask && v != 0.0 && v != 1.0) {
        add("mask domain", where + " '" + p.name + "' holds " + fmt(v));
        return;
      }
      if (p.dtype == DType::categorical) {
        const double limit = static_cast<double>(s.n + p.extra_categories);
        if (v < 0 || v >= limit || v != std::floor(v)) {
          add("category range", where + " '" + p.name + "' holds " + fmt(v) + " outside [0, " +
                                    fmt(limit) + ")");
          return;
        }
      }
    }
  }

  static std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  }

  void map(const std::vector<ProbeSpec>& spec, Stage stage, const FieldMap& m,
           const std::string& where) {
    std::set<std::string> expected;
    for (const auto& p : spec) {
      if (p.stage != stage) continue;
      expected.insert(p.name);
      auto it = m.find(p.name);
      if (it == m.end())
        add("schema", where + " lacks '" + p.name + "'");
      else
        field(p, it->second, where);
    }
    for (const auto& [name, f] : m)
      if (!expected.count(name)) add("schema", where + " has undeclared '" + name + "'");
  }
};

const Field* find(const FieldMap& m, const std::string& k) {
  auto it = m.find(k);
  return it == m.end() ? nullptr : &it->second;
}

bool has_shape(const Field* f, std::size_t size) { return f && f->values.size() == size; }

}  // namespace

std::vector<std::string> validate_sample(const Sample& s, const std::vector<ProbeSpec>& spec) {
  std::vector<std::string> out;
  Checker ck{s, out};
  const auto algo = try_parse_algorithm(s.algo);
  if (!algo) {
    ck.add("schema", "unknown algorithm '" + s.algo + "'");
    return out;
  }
  if (s.n < 1) ck.add("shape", "n must be >= 1");

  ck.map(spec, Stage::input, s.inputs, "inputs");
  ck.map(spec, Stage::output, s.outputs, "outputs");
  for (std::size_t t = 0; t < s.hints.size(); ++t) {
    if (s.hints[t].step != t + 1)
      ck.add("hints length", "frame " + std::to_string(t) + " carries step " +
                                 std::to_string(s.hints[t].step));
    ck.map(spec, Stage::hint, s.hints[t].values, "hint frame " + std::to_string(t + 1));
  }
  if (s.hints.size() != s.activity.steps.size())
    ck.add("hints length", std::to_string(s.hints.size()) + " frames for depth " +
                               std::to_string(s.activity.steps.size()));

  for (std::size_t t = 0; t < s.activity.steps.size(); ++t) {
    const auto& a = s.activity.steps[t];
    if (a.ops > s.activity.width + 1)
      ck.add("activity", "step " + std::to_string(t + 1) + " has " + std::to_string(a.ops) +
                             " operations for width " + std::to_string(s.activity.width));
    if (a.a > s.activity.m)
      ck.add("activity", "step " + std::to_string(t + 1) + " has more active edges than m");
  }

  if (const Field* pos = find(s.inputs, "pos"); has_shape(pos, s.n)) {
    for (std::size_t i = 0; i < s.n; ++i) {
      const double v = pos->values[i];
      if (v < 0.0 || v >= 1.0) ck.add("positional", "pos[" + std::to_string(i) + "] outside [0, 1)");
      if (i > 0 && !(pos->values[i - 1] < v))
        ck.add("positional", "pos is not strictly increasing at " + std::to_string(i));
    }
  }
  if (!out.empty()) return out;  // the checks below assume well-formed shapes

  // Monotonicity of the discovery masks.
  auto mask = [&](std::size_t t, const char* name) -> const std::vector<double>& {
    return s.hints[t].values.at(name).values;
  };
  for (std::size_t t = 1; t < s.hints.size(); ++t) {
    for (std::size_t v = 0; v < s.n; ++v) {
      if (*algo == Algorithm::dcsc) {
        const double u0 = mask(t - 1, "undiscovered")[v], u1 = mask(t, "undiscovered")[v];
        if (u0 == 0.0 && u1 == 1.0)
          ck.add("monotonicity", "undiscovered re-acquires node " + std::to_string(v) +
                                     " at step " + std::to_string(t + 1));
        const double i0 = mask(t - 1, "in_scc")[v], i1 = mask(t, "in_scc")[v];
        if (i0 == 1.0 && i1 == 0.0 && (u0 != 0.0 || u1 != 0.0))
          ck.add("monotonicity", "in_scc drops node " + std::to_string(v) +
                                     " inside a pivot phase at step " + std::to_string(t + 1));
      } else if (*algo == Algorithm::kosaraju) {
        for (const char* name : {"visited_1", "finished_1", "visited_2"})
          if (mask(t - 1, name)[v] == 1.0 && mask(t, name)[v] == 0.0)
            ck.add("monotonicity", std::string(name) + " drops node " + std::to_string(v) +
                                       " at step " + std::to_string(t + 1));
      }
    }
  }

  // Output-bearing hints must end on the output.
  if (!s.hints.empty()) {
    for (const auto& [name, f] : s.outputs) {
      auto it = s.hints.back().values.find(name);
      if (it != s.hints.back().values.end() && it->second != f)
        ck.add("final frame", "last '" + name + "' frame differs from the output");
    }
  }

  std::string why;
  auto replayed = replay_hints(s, &why);
  if (!replayed)
    ck.add("replay", why);
  else if (*replayed != s.outputs)
    ck.add("replay", "replayed hints do not reproduce the outputs");
  return out;
}

// ---- replay ------------------------------------------------------------------

namespace {

// Position of the single 1 in a one-hot node mask, `none` if all zero,
// nullopt if several.
std::optional<std::size_t> one_hot(const std::vector<double>& m, std::size_t none) {
  std::optional<std::size_t> at;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0.0) continue;
    if (at) return std::nullopt;
    at = i;
  }
  return at ? *at : none;
}

std::vector<double> iota_values(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i);
  return v;
}

}  // namespace

std::optional<FieldMap> replay_hints(const Sample& s, std::string* why) {
  auto fail = [&](const std::string& reason) -> std::optional<FieldMap> {
    if (why) *why = reason;
    return std::nullopt;
  };
  const auto algo = try_parse_algorithm(s.algo);
  if (!algo) return fail("unknown algorithm");
  const std::size_t n = s.n;
  auto frame = [&](std::size_t t, const char* name) -> const std::vector<double>* {
    auto it = s.hints[t].values.find(name);
    return it == s.hints[t].values.end() ? nullptr : &it->second.values;
  };
  FieldMap out;
  try {
    switch (*algo) {
      case Algorithm::parallel_search: {
        std::size_t rank = n;
        if (!s.hints.empty()) {
          const auto* m = frame(s.hints.size() - 1, "leq_mask");
          if (!m) return fail("leq_mask missing");
          for (std::size_t i = 0; i < n && rank == n; ++i)
            if ((*m)[i] == 1.0) rank = i;
        }
        out["rank"] = graph_field(static_cast<double>(rank));
        break;
      }
      case Algorithm::binary_search: {
        const auto& items = s.inputs.at("items").values;
        const double x = s.inputs.at("x").values.at(0);
        std::size_t low = 0, high = n;
        for (std::size_t t = 0; t < s.hints.size(); ++t) {
          const auto* lo = frame(t, "low");
          const auto* hi = frame(t, "high");
          const auto* md = frame(t, "mid");
          if (!lo || !hi || !md) return fail("binary search frame incomplete");
          const std::size_t mid = (low + high) / 2;
          if (one_hot(*md, n) != mid) return fail("mid mask disagrees with the interval");
          if (items.at(mid) <= x)
            high = mid;
          else
            low = mid + 1;
          if (one_hot(*lo, n) != low || one_hot(*hi, n) != high)
            return fail("interval masks disagree with the comparison at step " +
                        std::to_string(t + 1));
        }
        if (low != high) return fail("interval did not close");
        out["rank"] = graph_field(static_cast<double>(low));
        break;
      }
      case Algorithm::oets:
      case Algorithm::bubble_sort: {
        std::vector<std::size_t> order(n), where(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = where[i] = i;
        for (std::size_t t = 0; t < s.hints.size(); ++t) {
          const auto* sw = frame(t, "swap_mask");
          const auto* pr = frame(t, "pred");
          if (!sw || !pr) return fail("sort frame incomplete");
          for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
              if ((*sw)[u * n + v] == 1.0) {
                std::swap(order[where[u]], order[where[v]]);
                std::swap(where[u], where[v]);
              }
          if (*pr != pred_values(order))
            return fail("pred frame disagrees with the swaps at step " + std::to_string(t + 1));
        }
        out["pred"] = node_field(pred_values(order));
        break;
      }
      case Algorithm::dcsc:
      case Algorithm::kosaraju: {
        // A node's component pointer is fixed when it joins a component:
        // in_scc rising (DCSC) or first visit in the second pass (Kosaraju).
        const char* join = *algo == Algorithm::dcsc ? "in_scc" : "visited_2";
        std::vector<double> assigned = iota_values(n);
        std::vector<double> prev(n, 0.0);
        for (std::size_t t = 0; t < s.hints.size(); ++t) {
          const auto* j = frame(t, join);
          const auto* p = frame(t, "scc_ptr");
          if (!j || !p) return fail("scc frame incomplete");
          for (std::size_t v = 0; v < n; ++v)
            if (prev[v] == 0.0 && (*j)[v] == 1.0) assigned[v] = (*p)[v];
          prev = *j;
        }
        out["scc_ptr"] = node_field(std::move(assigned));
        break;
      }
    }
  } catch (const std::exception& e) {
    return fail(std::string("malformed frame: ") + e.what());
  }
  return out;
}

}  // namespace pramtraj
