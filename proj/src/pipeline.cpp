#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pramtraj/harness.hpp"
#include "pramtraj/random.hpp"

namespace pramtraj {

void GenConfig::validate() const {
  if (n_list.empty()) throw std::invalid_argument("at least one n is required");
  for (std::size_t n : n_list)
    if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (samples_per_n < 1) throw std::invalid_argument("samples must be >= 1");
  if (max_degree < 1) throw std::invalid_argument("max-degree must be >= 1");
}

Sample make_sample(Algorithm algo, std::size_t n, std::size_t index, std::uint64_t master_seed,
                   std::size_t max_degree) {
  const std::uint64_t seed = sample_seed(master_seed, task_id(task_of(algo)), n, index);
  const Instance inst = generate_instance(algo, n, seed, max_degree);
  return encode_sample(algo, inst, run_algorithm(algo, inst), seed);
}

std::vector<Sample> generate_dataset(const GenConfig& cfg) {
  cfg.validate();
  std::vector<Sample> out;
  out.reserve(cfg.n_list.size() * cfg.samples_per_n);
  for (std::size_t n : cfg.n_list)
    for (std::size_t i = 0; i < cfg.samples_per_n; ++i)
      out.push_back(make_sample(cfg.algo, n, i, cfg.seed, cfg.max_degree));
  return out;
}

std::string schema_path(const std::string& dataset_path) {
  const auto slash = dataset_path.find_last_of('/');
  const auto dot = dataset_path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return dataset_path + ".schema";
  return dataset_path.substr(0, dot) + ".schema";
}

namespace {

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

std::size_t write_dataset(const GenConfig& cfg) {
  if (cfg.out_path.empty()) throw std::invalid_argument("an output path is required");
  const auto samples = generate_dataset(cfg);
  write_file(cfg.out_path, serialize_ndjson(samples));
  write_file(schema_path(cfg.out_path), serialize_schema(probe_spec(cfg.algo)));
  return samples.size();
}

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("PRAMTRAJ_SEED");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long s = std::strtoull(v, &end, 10);
  if (errno != 0 || *end != '\0' || *v == '-') return std::nullopt;
  return static_cast<std::uint64_t>(s);
}

// ---- inline instances ---------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& tok) {
  if (tok.empty()) throw std::invalid_argument("empty number");
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("'" + tok + "' is not a number");
  }
  if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument("'" + tok + "' is not a number");
  return v;
}

std::size_t parse_index(const std::string& tok) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("'" + tok + "' is not a node index");
  return static_cast<std::size_t>(std::stoull(tok));
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  for (const auto& tok : split(s, ',')) v.push_back(parse_double(tok));
  if (v.empty()) throw std::invalid_argument("empty item list");
  return v;
}

}  // namespace

Instance parse_inline_instance(Algorithm algo, const std::string& text) {
  switch (task_of(algo)) {
    case Task::sort: {
      SortInstance s{parse_list(text)};
      s.validate();
      return s;
    }
    case Task::search: {
      const auto parts = split(text, ';');
      if (parts.size() != 2) throw std::invalid_argument("search input must look like 'A;x'");
      SearchInstance s{parse_list(parts[0]), parse_double(parts[1])};
      s.validate();
      return s;
    }
    default: {
      const auto colon = text.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("digraph input must look like 'n:u->v,...'");
      const std::size_t n = parse_index(trim(text.substr(0, colon)));
      if (n < 1) throw std::invalid_argument("digraph needs at least one node");
      std::vector<Edge> edges;
      const std::string rest = trim(text.substr(colon + 1));
      if (!rest.empty()) {
        for (const auto& tok : split(rest, ',')) {
          const auto arrow = tok.find("->");
          if (arrow == std::string::npos) throw std::invalid_argument("edge '" + tok + "' lacks '->'");
          edges.push_back({parse_index(trim(tok.substr(0, arrow))), parse_index(trim(tok.substr(arrow + 2)))});
        }
      }
      return Digraph(n, std::move(edges));
    }
  }
}

// ---- trace rendering ------------------------------------------------------------

namespace {

std::string node_name(ProcId p) { return p == kGraphNode ? "G" : std::to_string(p); }

std::string render_output(const Output& o) {
  std::ostringstream os;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rank>) {
          os << "rank " << x.value;
        } else if constexpr (std::is_same_v<T, PredecessorPointers>) {
          os << "order";
          for (std::size_t i : x.order()) os << ' ' << i;
        } else {
          os << "scc_ptr";
          for (std::size_t i : x.scc_ptr) os << ' ' << i;
        }
      },
      o);
  return os.str();
}

}  // namespace

std::string render_trace(const AlgorithmRun& run) {
  const Trace& t = run.trace;
  std::ostringstream os;
  os << "algo " << t.algo_id() << "  width " << t.width() << "  depth " << t.depth() << '\n';
  t.for_each_state([&](std::size_t step, const MachineState& s) {
    if (step == 0) {
      os << "t=0";
    } else {
      const ActivityView v = t.activity(step - 1);
      os << "t=" << step << "  ops " << v.op_count << (v.graph_op ? " (graph op)" : "")
         << "\n  active nodes {";
      for (std::size_t k = 0; k < v.active_nodes.size(); ++k)
        os << (k ? "," : "") << v.active_nodes[k];
      os << "}\n  active edges {";
      bool first = true;
      for (const ActiveEdge& e : v.active_edges) {
        os << (first ? "" : ",") << '(' << node_name(e.from) << ',' << node_name(e.to) << ')';
        first = false;
      }
      os << "}\n ";
    }
    os << " shared [";
    for (std::size_t a = 0; a < s.shared_size(); ++a) os << (a ? " " : "") << s.shared(a).to_string();
    os << "]\n  local ";
    for (std::size_t p = 0; p < s.width(); ++p) {
      os << (p ? " | " : "");
      for (std::size_t r = 0; r < s.registers(); ++r) os << (r ? " " : "") << s.local(p, r).to_string();
    }
    os << '\n';
  });
  os << "output " << render_output(run.output) << '\n';
  return os.str();
}

}  // namespace pramtraj
