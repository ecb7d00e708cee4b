#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "pramtraj/algorithms.hpp"
#include "pramtraj/machine.hpp"

using namespace pramtraj;

namespace {

struct Identity {
  void node(NodeContext&) const {}
};

struct IncrementOne {
  ProcId who;
  void node(NodeContext& c) const {
    if (c.id() == who) c.set(0, Cell::scalar(c.self(0).as_scalar() + 1.0));
  }
};

struct ReadAcross {
  void node(NodeContext& c) const {
    if (c.id() == 0) c.set(0, c.neighbor(2, 0));
  }
};

struct ReadUndefined {
  void node(NodeContext& c) const { c.set(0, Cell::scalar(c.self(1).as_scalar())); }
};

// Each node reads a pseudo-random subset of its in-neighbours and keeps the
// maximum it saw. Used to probe active-edge soundness.
struct SubsetMax {
  const InterconnectionGraph* g;
  std::uint64_t salt;
  bool reads(ProcId j, ProcId i) const {
    std::uint64_t h = (j * 0x9e3779b97f4a7c15ULL) ^ (i * 0xbf58476d1ce4e5b9ULL) ^ salt;
    h ^= h >> 31;
    return (h * 0x94d049bb133111ebULL) >> 63;
  }
  void node(NodeContext& c) const {
    double best = c.self(0).as_scalar();
    for (ProcId j : g->in_neighbors(c.id()))
      if (reads(j, c.id())) best = std::max(best, c.neighbor(j, 0).as_scalar());
    c.set(0, Cell::scalar(best));
  }
};

MachineState scalars(const std::vector<double>& v) {
  MachineState s(v.size(), 1, 1);
  for (std::size_t i = 0; i < v.size(); ++i) s.set_local(i, 0, Cell::scalar(v[i]));
  return s;
}

}  // namespace

TEST_CASE("cells hold exactly one kind") {
  Cell u;
  CHECK(u.is_undefined());
  CHECK(Cell::scalar(0.0) != u);
  CHECK(Cell::index(0) != u);
  CHECK(Cell::flag(false) != u);
  CHECK(Cell::index(3).as_index() == 3);
  CHECK_THROWS_AS(Cell::scalar(1.0).as_index(), CellTypeError);
  CHECK_THROWS_AS(u.as_flag(), CellTypeError);
}

TEST_CASE("resolve_writes examples") {
  std::vector<WriteRequest> r1{{2, 0, Cell::scalar(7)}, {0, 0, Cell::scalar(5)}};
  CHECK(resolve_writes(r1) == std::vector<AppliedWrite>{{0, Cell::scalar(5)}});
  std::vector<WriteRequest> r2{{3, 1, Cell::scalar(9)}};
  CHECK(resolve_writes(r2) == std::vector<AppliedWrite>{{1, Cell::scalar(9)}});
  CHECK(resolve_writes({}).empty());
}

TEST_CASE("priority rule matches the oracle on random request sets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t p = 1 + rng() % 16, addrs = 1 + rng() % 4, k = rng() % 20;
    std::vector<WriteRequest> reqs;
    std::vector<std::tuple<std::size_t, std::size_t, double>> plain;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t proc = rng() % p, addr = rng() % addrs;
      bool dup = false;
      for (const auto& r : reqs) dup = dup || (r.proc == proc && r.address == addr);
      if (dup) continue;
      const double v = static_cast<double>(rng() % 1000);
      reqs.push_back({proc, addr, Cell::scalar(v)});
      plain.emplace_back(proc, addr, v);
    }
    const auto got = resolve_writes(reqs);
    const auto want = oracle::priority_write(plain);
    REQUIRE(got.size() == want.size());
    std::size_t k2 = 0;
    for (const auto& [addr, v] : want) {
      CHECK(got[k2].address == addr);
      CHECK(got[k2].value == Cell::scalar(v));
      ++k2;
    }
  }
}

TEST_CASE("identity step leaves the state and records nothing") {
  const auto g = InterconnectionGraph::complete(4);
  const MachineState s = scalars({1, 2, 3, 4});
  auto [next, rec] = step_machine(s, Identity{}, g);
  CHECK(rec.active_nodes.empty());
  CHECK(rec.active_edges.empty());
  CHECK(rec.op_count == 0);
  CHECK(next.clock() == 1);
  for (ProcId i = 0; i < 4; ++i) CHECK(next.local(i, 0) == s.local(i, 0));
}

TEST_CASE("a self increment activates one node and its self-edge") {
  const auto g = InterconnectionGraph::empty(3);
  auto [next, rec] = step_machine(scalars({0, 5, 0}), IncrementOne{1}, g);
  CHECK(rec.active_nodes == std::vector<ProcId>{1});
  CHECK(rec.active_edges == std::vector<ActiveEdge>{{1, 1, false}});
  CHECK(rec.op_count == 1);
  CHECK(next.local(1, 0).as_scalar() == 6.0);
}

TEST_CASE("even OETS round on four nodes pairs (0,1) and (2,3)") {
  auto run = oets_sort(SortInstance{{4, 3, 2, 1}});
  const ActivityView v = run.trace.activity(0);
  CHECK(std::vector<ProcId>(v.active_nodes.begin(), v.active_nodes.end()) ==
        std::vector<ProcId>{0, 1, 2, 3});
  std::set<std::pair<ProcId, ProcId>> cross;
  for (const auto& e : v.active_edges)
    if (!e.graph_level && e.from != e.to) cross.insert({e.from, e.to});
  CHECK(cross == std::set<std::pair<ProcId, ProcId>>{{0, 1}, {1, 0}, {2, 3}, {3, 2}});
}

TEST_CASE("reads outside the neighbourhood are rejected") {
  const auto path = InterconnectionGraph(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(step_machine(scalars({1, 2, 3}), ReadAcross{}, path), NeighborhoodViolation);
  auto no_self = InterconnectionGraph::empty(3, false);
  CHECK_THROWS_AS(step_machine(scalars({1, 2, 3}), IncrementOne{0}, no_self), NeighborhoodViolation);
}

TEST_CASE("operating on an undefined cell is an error") {
  MachineState s(2, 2, 0);
  s.set_local(0, 0, Cell::scalar(1));
  s.set_local(1, 0, Cell::scalar(1));
  CHECK_THROWS_AS(step_machine(s, ReadUndefined{}, InterconnectionGraph::empty(2)), UndefinedRead);
}

TEST_CASE("run_machine halting and limits") {
  const auto g = InterconnectionGraph::empty(2);
  auto t = run_machine(scalars({0, 0}), IncrementOne{0}, g, [](const MachineState&) { return true; }, 5);
  CHECK(t.depth() == 0);
  CHECK(t.states().size() == 1);
  CHECK_THROWS_AS(run_machine(scalars({0, 0}), IncrementOne{0}, g,
                              [](const MachineState&) { return false; }, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_machine(scalars({0, 0}), IncrementOne{0}, g,
                              [](const MachineState&) { return false; }, 7),
                  StepLimitExceeded);
  auto t3 = run_machine(scalars({0, 0}), IncrementOne{0}, g,
                        [](const MachineState& s) { return s.clock() == 3; }, 10);
  CHECK(t3.depth() == 3);
  CHECK(t3.states().size() == 4);
  for (std::size_t k = 0; k <= 3; ++k) CHECK(t3.state(k).clock() == k);
  CHECK(t3.final_state().local(0, 0).as_scalar() == 3.0);
}

TEST_CASE("parallel search on n=8 has depth 2; reversed OETS has depth n") {
  SearchInstance si;
  for (int i = 0; i < 8; ++i) si.items.push_back(8.0 - i);
  si.x = 4.5;
  CHECK(parallel_search(si).trace.depth() == 2);
  for (std::size_t n : {2u, 3u, 5u, 8u, 13u}) {
    SortInstance s;
    for (std::size_t i = 0; i < n; ++i) s.items.push_back(static_cast<double>(n - i));
    CHECK(oets_sort(s).trace.depth() == n);
  }
}

TEST_CASE("traces are reproducible bit for bit") {
  SortInstance s{{0.3, 0.9, 0.1, 0.5, 0.7}};
  CHECK(oets_sort(s).trace == oets_sort(s).trace);
  CHECK(bubble_sort(s).trace == bubble_sort(s).trace);
  Digraph g(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}});
  CHECK(dcsc(g).trace == dcsc(g).trace);
  CHECK(kosaraju(g).trace == kosaraju(g).trace);
}

TEST_CASE("snapshots replay to the recorded final state") {
  auto run = bubble_sort(SortInstance{{5, 1, 4, 2, 3}});
  const auto states = run.trace.states();
  REQUIRE(states.size() == run.trace.depth() + 1);
  CHECK(states.back() == run.trace.final_state());
  CHECK(states.front() == run.trace.initial_state());
  for (std::size_t t = 0; t < states.size(); ++t) CHECK(states[t] == run.trace.state(t));
}

TEST_CASE("active-edge soundness on random wirings") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    std::vector<Edge> edges;
    for (ProcId a = 0; a < n; ++a)
      for (ProcId b = 0; b < n; ++b)
        if (a != b && rng() % 2) edges.push_back({a, b});
    const InterconnectionGraph g(n, edges);
    const SubsetMax prog{&g, rng()};
    std::vector<double> vals(n);
    for (double& v : vals) v = static_cast<double>(rng() % 100);
    const MachineState s = scalars(vals);
    auto [next, rec] = step_machine(s, prog, g);
    CHECK(rec.op_count <= n + 1);
    for (ProcId i : rec.active_nodes) {
      std::set<ProcId> declared;
      for (const auto& e : rec.active_edges)
        if (e.to == i && !e.graph_level) declared.insert(e.from);
      for (ProcId j = 0; j < n; ++j) {
        if (j == i) continue;
        MachineState p = s;
        p.set_local(j, 0, Cell::scalar(1e9));
        auto [pn, prec] = step_machine(p, prog, g);
        if (declared.count(j))
          CHECK(pn.local(i, 0) != next.local(i, 0));  // raising a read source changes the max
        else
          CHECK(pn.local(i, 0) == next.local(i, 0));
      }
    }
  }
}

TEST_CASE("op_count stays within width + 1 for every algorithm") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    std::vector<double> items(n);
    for (double& v : items) v = static_cast<double>(rng() % 7);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (u != v && rng() % 4 == 0) edges.push_back({u, v});
    std::vector<double> desc(n);
    for (std::size_t i = 0; i < n; ++i) desc[i] = static_cast<double>(n - i);
    const std::vector<Trace> traces = {
        parallel_search({desc, 2.5}).trace, binary_search({desc, 2.5}).trace,
        oets_sort({items}).trace,           bubble_sort({items}).trace,
        dcsc(Digraph(n, edges)).trace,      kosaraju(Digraph(n, edges)).trace};
    for (const Trace& t : traces)
      for (std::size_t k = 0; k < t.depth(); ++k) CHECK(t.activity(k).op_count <= t.width() + 1);
  }
}
