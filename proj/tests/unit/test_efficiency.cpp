#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pramtraj/efficiency.hpp"
#include "pramtraj/harness.hpp"
#include "pramtraj/random.hpp"
#include "pramtraj/trajectory.hpp"

using namespace pramtraj;

namespace {

std::vector<Trace> traces_for(Algorithm a, std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<Trace> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto s = sample_seed(seed, task_id(task_of(a)), n, i);
    out.push_back(run_algorithm(a, generate_instance(a, n, s, 3)).trace);
  }
  return out;
}

std::vector<const Trace*> ptrs(const std::vector<Trace>& ts) {
  std::vector<const Trace*> p;
  for (const auto& t : ts) p.push_back(&t);
  return p;
}

SearchInstance desc(std::size_t n, double x) {
  SearchInstance s;
  for (std::size_t i = 0; i < n; ++i) s.items.push_back(static_cast<double>(n - i));
  s.x = x;
  return s;
}

}  // namespace

TEST_CASE("capacity examples") {
  CHECK(capacity(parallel_search(desc(4, 2.5)).trace) == 10);
  CHECK(capacity(parallel_search(desc(8, 2.5)).trace) == 18);
  for (double x : {0.0, 1.0, 4.5, 8.0, 9.0}) CHECK(capacity(binary_search(desc(8, x)).trace) <= 36);
}

TEST_CASE("node efficiency examples") {
  for (std::size_t n : {1u, 2u, 7u, 32u})
    for (double x : {0.5, 3.0, 100.0}) CHECK(node_efficiency(parallel_search(desc(n, x)).trace) >= 0.5);
  for (double x : {0.5, 3.0, 8.5, 16.5})
    CHECK(node_efficiency(binary_search(desc(16, x)).trace) <= 2.0 * 5 / (17.0 * 5) + 1e-12);
  for (std::size_t n : {4u, 9u, 16u}) {
    SortInstance s;
    for (std::size_t i = 0; i < n; ++i) s.items.push_back(static_cast<double>(n - i));
    CHECK(node_efficiency(oets_sort(s).trace) >= 2.0 / 3.0);
  }
  CHECK(node_efficiency(bubble_sort({{1}}).trace) == 1.0);
}

TEST_CASE("edge efficiency examples") {
  CHECK_THROWS_AS(edge_efficiency(std::span<const Trace* const>{}), std::invalid_argument);
  const auto ps = traces_for(Algorithm::parallel_search, 8, 100, 4);
  const auto pe = edge_efficiency(ptrs(ps));
  // n active star edges of 2n in the mask layer: a constant share.
  CHECK(pe.eps_min >= 0.1);
  CHECK(pe.eps_mean <= 1.0);
  for (const Trace& t : traces_for(Algorithm::bubble_sort, 8, 50, 4))
    for (std::size_t k = 0; k < t.depth(); ++k) CHECK(total_active_edges(t, k) <= 4);
  const auto os = traces_for(Algorithm::oets, 8, 100, 4);
  // Even rounds compare n/2 pairs, odd rounds n/2 - 1: n - 1 edges a round on average.
  CHECK(edge_efficiency(ptrs(os)).eps_min >= (8.0 / 2 - 1) * 2 / (8.0 * 7) - 1e-12);
  CHECK(edge_efficiency(ptrs(os)).eps_min >= 0.5 / 8);
  CHECK(edge_efficiency(bubble_sort({{1}}).trace) == 1.0);
  CHECK(edge_efficiency(dcsc(Digraph(3, {})).trace) == 1.0);
}

TEST_CASE("budget and range invariants hold on generated traces") {
  for (Algorithm a : kAllAlgorithms)
    for (std::size_t n : {1u, 3u, 8u, 17u}) {
      const auto ts = traces_for(a, n, 15, 8);
      for (const Trace& t : ts) {
        CHECK(op_total(t) <= capacity(t) + t.depth());
        CHECK(node_efficiency(t) <= 1.0 + 1.0 / t.width() + 1e-12);
        CHECK(node_efficiency(t, false) <= node_efficiency(t));
        const double e = edge_efficiency(t);
        CHECK(e >= 0.0);
        CHECK(e <= 1.0);
      }
      const auto ee = edge_efficiency(ptrs(ts));
      CHECK(ee.eps_min <= ee.eps_mean + 1e-12);
    }
}

TEST_CASE("parallel members beat sequential ones at fixed n") {
  for (Task task : {Task::search, Task::sort})
    for (std::size_t n : {8u, 16u}) {
      const auto pair = pair_of(task);
      const auto par = traces_for(pair[0], n, 30, 2);
      const auto seq = traces_for(pair[1], n, 30, 2);
      REQUIRE(is_parallel(pair[0]));
      const auto rp = aggregate(n, ptrs(par)), rs = aggregate(n, ptrs(seq));
      CHECK(rp.eps_mean > rs.eps_mean);
      CHECK(rp.eta_mean > rs.eta_mean);
    }
}

TEST_CASE("metrics ignore order-preserving value changes") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 14;
    const auto base = gen_permutation(n, rng());
    SortInstance scaled = base;
    for (double& v : scaled.items) v = 3.0 * v * v + 7.0;  // monotone on [0,1)
    for (Algorithm a : {Algorithm::oets, Algorithm::bubble_sort}) {
      const Trace t1 = run_algorithm(a, base).trace, t2 = run_algorithm(a, scaled).trace;
      CHECK(capacity(t1) == capacity(t2));
      CHECK(op_total(t1) == op_total(t2));
      CHECK(edge_efficiency(t1) == edge_efficiency(t2));
    }
    const auto s = gen_search_instance(n, rng());
    SearchInstance ss = s;
    for (double& v : ss.items) v = 2.0 * v - 5.0;
    ss.x = 2.0 * s.x - 5.0;
    for (Algorithm a : {Algorithm::parallel_search, Algorithm::binary_search}) {
      const Trace t1 = run_algorithm(a, s).trace, t2 = run_algorithm(a, ss).trace;
      CHECK(capacity(t1) == capacity(t2));
      CHECK(node_efficiency(t1) == node_efficiency(t2));
      CHECK(edge_efficiency(t1) == edge_efficiency(t2));
    }
  }
}

TEST_CASE("relabelling the whole input space leaves worst and mean cases unchanged") {
  std::mt19937_64 rng(43);
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Algorithm a : {Algorithm::oets, Algorithm::bubble_sort}) {
      std::vector<Trace> plain, relabelled;
      for (const Instance& inst : exhaustive_instances(a, n)) {
        const auto& items = std::get<SortInstance>(inst).items;
        SortInstance moved;
        moved.items.resize(n);
        for (std::size_t i = 0; i < n; ++i) moved.items[perm[i]] = items[i];
        plain.push_back(run_algorithm(a, inst).trace);
        relabelled.push_back(run_algorithm(a, moved).trace);
      }
      const auto e1 = edge_efficiency(ptrs(plain)), e2 = edge_efficiency(ptrs(relabelled));
      CHECK(e1.eps_min == doctest::Approx(e2.eps_min).epsilon(1e-12));
      CHECK(e1.eps_mean == doctest::Approx(e2.eps_mean).epsilon(1e-12));
      const auto r1 = aggregate(n, ptrs(plain)), r2 = aggregate(n, ptrs(relabelled));
      CHECK(r1.capacity == r2.capacity);
      CHECK(r1.eta_mean == doctest::Approx(r2.eta_mean).epsilon(1e-12));
    }
  }
}

TEST_CASE("metrics survive the trip through a serialized sample") {
  for (Algorithm a : kAllAlgorithms)
    for (std::size_t n : {1u, 4u, 11u})
      for (std::size_t i = 0; i < 5; ++i) {
        const std::uint64_t seed = sample_seed(17, task_id(task_of(a)), n, i);
        const Instance inst = generate_instance(a, n, seed, 3);
        const AlgorithmRun run = run_algorithm(a, inst);
        const Sample back = parse_ndjson(serialize_ndjson({encode_sample(a, inst, run, seed)})).front();
        CHECK(capacity(back.activity) == capacity(run.trace));
        CHECK(op_total(back.activity) == op_total(run.trace));
        CHECK(node_efficiency(back.activity) == node_efficiency(run.trace));
        CHECK(node_efficiency(back.activity, false) == node_efficiency(run.trace, false));
        CHECK(edge_efficiency(back.activity) == edge_efficiency(run.trace));
      }
}

TEST_CASE("log-log slopes and class annotation") {
  const std::vector<double> n{8, 16, 32, 64};
  std::vector<double> sq, lin, nlog;
  for (double v : n) {
    sq.push_back(3 * v * v);
    lin.push_back(v + 1);
    nlog.push_back(v * std::log2(v + 1));
  }
  CHECK(loglog_slope(n, sq) == doctest::Approx(2.0));
  const auto c = classify("capacity", n, sq);
  CHECK(c.nearest == "n^2");
  CHECK(c.within_band);
  CHECK(classify("capacity", n, nlog).nearest == "n log n");
  CHECK(classify("capacity", n, lin).nearest == "n");
}

TEST_CASE("scaling reports follow the expected shapes") {
  const auto ps = scaling_report(Algorithm::parallel_search, {8, 16, 32, 64}, 5, 1);
  for (const auto& r : ps.records) CHECK(r.depth_max == 2);
  const auto bs = scaling_report(Algorithm::bubble_sort, {8, 16, 32, 64}, 2, 1);
  CHECK(bs.fits.front().metric == "capacity");
  CHECK(bs.fits.front().slope == doctest::Approx(3.0).epsilon(0.07));
  // Width n over a depth linear in n + m with m = Theta(n).
  const auto ks = scaling_report(Algorithm::kosaraju, {8, 16, 32, 64}, 5, 1);
  CHECK(ks.fits.front().nearest == "n^2");
  const auto dc = scaling_report(Algorithm::dcsc, {8, 16, 32, 64}, 20, 1);
  for (std::size_t k = 1; k < dc.records.size(); ++k) CHECK(dc.records[k].eta_mean < dc.records[k - 1].eta_mean);
  CHECK_THROWS_AS(scaling_report(Algorithm::oets, {8, 16}, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(scaling_report(Algorithm::oets, {16, 8, 32}, 2, 1), std::invalid_argument);
  CHECK(report_ndjson(ps) == report_ndjson(scaling_report(Algorithm::parallel_search, {8, 16, 32, 64}, 5, 1)));
  const std::string table = report_table(ps);
  for (const char* col : {"algo", "width", "depth", "capacity", "eta", "eps_min", "eps_mean", "class"})
    CHECK(table.find(col) != std::string::npos);
}

TEST_CASE("exhaustive enumeration sizes") {
  CHECK(exhaustive_instances(Algorithm::binary_search, 5).size() == 6);
  CHECK(exhaustive_instances(Algorithm::oets, 4).size() == 24);
  CHECK(exhaustive_instances(Algorithm::bubble_sort, 6).size() == 720);
  CHECK_THROWS_AS(exhaustive_instances(Algorithm::oets, 7), std::invalid_argument);
  CHECK_THROWS_AS(exhaustive_instances(Algorithm::dcsc, 3), std::invalid_argument);
  std::vector<std::size_t> ranks;
  for (const Instance& i : exhaustive_instances(Algorithm::parallel_search, 4))
    ranks.push_back(std::get<Rank>(run_algorithm(Algorithm::parallel_search, i).output).value);
  CHECK(ranks == std::vector<std::size_t>{0, 1, 2, 3, 4});
}
