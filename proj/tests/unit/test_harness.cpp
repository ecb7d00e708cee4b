#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "pramtraj/harness.hpp"
#include "pramtraj/random.hpp"

using namespace pramtraj;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / "pramtraj_unit";
  fs::create_directories(d);
  return d;
}

std::vector<std::pair<std::size_t, std::size_t>> pairs_of(const Digraph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> p;
  for (const Edge& e : g.edges()) p.emplace_back(e.from, e.to);
  return p;
}

}  // namespace

TEST_CASE("search generator") {
  const auto a = gen_search_instance(1, 7);
  CHECK(a.items.size() == 1);
  CHECK(gen_search_instance(12, 3).items == gen_search_instance(12, 3).items);
  CHECK(gen_search_instance(12, 3).x == gen_search_instance(12, 3).x);
  std::set<std::size_t> single;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto i = gen_search_instance(1, s);
    single.insert(oracle::linear_rank(i.items, i.x));
  }
  CHECK(single == std::set<std::size_t>{0, 1});
  std::vector<int> hist(65, 0);
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto i = gen_search_instance(64, s);
    i.validate();
    ++hist[oracle::linear_rank(i.items, i.x)];
  }
  CHECK(hist[0] > 0);
  CHECK(hist[64] > 0);
}

TEST_CASE("permutation generator covers every order") {
  CHECK(gen_permutation(5, 9).items == gen_permutation(5, 9).items);
  std::set<std::vector<std::size_t>> orders;
  for (std::uint64_t s = 0; s < 720 * 20; ++s) {
    const auto p = gen_permutation(6, s);
    std::set<double> distinct(p.items.begin(), p.items.end());
    REQUIRE(distinct.size() == 6);
    orders.insert(oracle::sorted_order(p.items));
  }
  CHECK(orders.size() == 720);
}

TEST_CASE("digraph generator") {
  CHECK(gen_digraph(1, 3, 5).edge_count() == 0);
  CHECK(gen_digraph(10, 3, 5) == gen_digraph(10, 3, 5));
  bool strongly = false, acyclic = false;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const Digraph g = gen_digraph(16, 3, s);
    for (std::size_t u = 0; u < 16; ++u) CHECK(g.out(u).size() <= 3);
    const auto label = oracle::tarjan(16, pairs_of(g));
    const std::set<std::size_t> comps(label.begin(), label.end());
    strongly = strongly || comps.size() == 1;
    acyclic = acyclic || comps.size() == 16;
  }
  CHECK(strongly);
  CHECK(acyclic);
}

TEST_CASE("positional scalars are sorted, distinct and in range") {
  for (std::size_t n : {1u, 2u, 50u}) {
    const auto p = positional_scalars(n, 11);
    CHECK(p.size() == n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(p[i] >= 0.0);
      CHECK(p[i] < 1.0);
      if (i) CHECK(p[i] > p[i - 1]);
    }
  }
}

TEST_CASE("samples depend only on their coordinates") {
  GenConfig big{Algorithm::dcsc, {4, 16}, 6, 21, 3, ""};
  GenConfig small{Algorithm::dcsc, {16}, 3, 21, 3, ""};
  const auto a = generate_dataset(big), b = generate_dataset(small);
  REQUIRE(a.size() == 12);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a[6 + i] == b[i]);
  CHECK(make_sample(Algorithm::oets, 8, 4, 21) == generate_dataset({Algorithm::oets, {8}, 5, 21, 3, ""})[4]);
  // Pair members see the same instances.
  CHECK(make_sample(Algorithm::oets, 8, 2, 5).inputs.at("items") ==
        make_sample(Algorithm::bubble_sort, 8, 2, 5).inputs.at("items"));
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS((GenConfig{Algorithm::oets, {4}, 0, 1, 3, "x"}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GenConfig{Algorithm::oets, {}, 1, 1, 3, "x"}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GenConfig{Algorithm::oets, {0}, 1, 1, 3, "x"}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GenConfig{Algorithm::dcsc, {4}, 1, 1, 0, "x"}.validate()), std::invalid_argument);
  CHECK_NOTHROW((GenConfig{Algorithm::dcsc, {4}, 1, 1, 1, "x"}.validate()));
}

TEST_CASE("inline grammar") {
  CHECK(std::get<SortInstance>(parse_inline_instance(Algorithm::oets, "3,1,2")).items ==
        std::vector<double>{3, 1, 2});
  const auto s = std::get<SearchInstance>(parse_inline_instance(Algorithm::binary_search, "9,7,5;5"));
  CHECK(s.items == std::vector<double>{9, 7, 5});
  CHECK(s.x == 5);
  const auto g = std::get<Digraph>(parse_inline_instance(Algorithm::dcsc, "3:0->1,1->0,1->2"));
  CHECK(g == Digraph(3, {{0, 1}, {1, 0}, {1, 2}}));
  CHECK(std::get<Digraph>(parse_inline_instance(Algorithm::kosaraju, "2:")).edge_count() == 0);
  for (const char* bad : {"", "3,,1", "a,b"})
    CHECK_THROWS_AS(parse_inline_instance(Algorithm::oets, bad), std::invalid_argument);
  for (const char* bad : {"9,7,5", "1,2;0", "9;x"})
    CHECK_THROWS_AS(parse_inline_instance(Algorithm::parallel_search, bad), std::invalid_argument);
  for (const char* bad : {"3", "3:0-1", "3:0->3", "3:1->1", "0:"})
    CHECK_THROWS_AS(parse_inline_instance(Algorithm::dcsc, bad), std::invalid_argument);
}

TEST_CASE("schema path swaps the suffix") {
  CHECK(schema_path("d.ndjson") == "d.schema");
  CHECK(schema_path("dir/x.y.ndjson") == "dir/x.y.schema");
  CHECK(schema_path("plain") == "plain.schema");
}

TEST_CASE("cli gen is deterministic and validates") {
  const fs::path d = scratch_dir();
  const std::string p1 = (d / "a.ndjson").string(), p2 = (d / "b.ndjson").string();
  for (const auto& p : {p1, p2})
    CHECK(cli({"gen", "--algo", "parallel_search", "--n", "16", "--samples", "10", "--seed", "42",
               "--out", p})
              .code == 0);
  const std::string bytes = slurp(p1);
  CHECK(bytes == slurp(p2));
  CHECK(std::count(bytes.begin(), bytes.end(), '\n') == 10);
  CHECK(fs::exists(schema_path(p1)));
  const auto v = cli({"validate", "--in", p1});
  CHECK(v.code == 0);
  CHECK(v.out.find("0 violations") != std::string::npos);

  std::ofstream(p2, std::ios::trunc) << "{broken\n";
  CHECK(cli({"validate", "--in", p2}).code == 1);

  auto samples = parse_ndjson(bytes);
  samples[3].hints[0].values["leq_mask"].values[0] = 2.0;
  std::ofstream(p2, std::ios::binary | std::ios::trunc) << serialize_ndjson(samples);
  const auto bad = cli({"validate", "--in", p2});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("mask domain") != std::string::npos);
}

TEST_CASE("cli trace shows the OETS swap rounds") {
  const auto r = cli({"trace", "--algo", "oets", "--input", "3,1,2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("swap rounds 2") != std::string::npos);
  CHECK(r.out.find("active") != std::string::npos);
}

TEST_CASE("cli compare favours the parallel row") {
  const auto r = cli({"compare", "--pair", "search", "--n", "32", "--samples", "50", "--seed", "7"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header, row_par, row_seq;
  std::getline(in, header);
  std::getline(in, row_par);
  std::getline(in, row_seq);
  auto fields = [](const std::string& line) {
    std::istringstream s(line);
    std::vector<std::string> f;
    for (std::string w; s >> w;) f.push_back(w);
    return f;
  };
  const auto p = fields(row_par), s = fields(row_seq);
  REQUIRE(p.size() == 10);
  REQUIRE(s.size() == 10);
  CHECK(p[0] == "parallel_search");
  CHECK(s[0] == "binary_search");
  for (std::size_t col : {6u, 7u, 8u, 9u}) CHECK(std::stod(p[col]) > std::stod(s[col]));
}

TEST_CASE("cli argument errors exit with 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"gen", "--algo", "quicksort", "--n", "4", "--samples", "1", "--out", "/tmp/x"}).code == 2);
  CHECK(cli({"gen", "--algo", "oets", "--n", "4", "--samples", "0", "--out", "/tmp/x"}).code == 2);
  CHECK(cli({"gen", "--algo", "oets", "--samples", "1", "--out", "/tmp/x"}).code == 2);
  CHECK(cli({"trace", "--algo", "oets", "--input", "1,,2"}).code == 2);
  CHECK(cli({"trace", "--algo", "dcsc", "--input", "2:0->5"}).code == 2);
  CHECK(cli({"validate", "--in", "/nonexistent/path.ndjson"}).code == 2);
  CHECK(cli({"analyze", "--algo", "oets", "--n-list", "4,8", "--samples", "2"}).code == 2);
  CHECK(cli({"compare", "--pair", "graph", "--n", "4", "--samples", "2"}).code == 2);
  CHECK(cli({"bogus"}).code == 2);
  const auto unknown = cli({"trace", "--algo", "quicksort", "--input", "1"});
  CHECK(unknown.err.find("unknown algorithm") != std::string::npos);
}

TEST_CASE("cli analyze writes a report") {
  const auto r = cli({"analyze", "--algo", "oets", "--n-list", "4,5,6", "--exhaustive"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"eps_min\"") != std::string::npos);
  CHECK(r.out == cli({"analyze", "--algo", "oets", "--n-list", "4,5,6", "--exhaustive"}).out);
}
