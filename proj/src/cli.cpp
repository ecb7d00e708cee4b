#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pramtraj/efficiency.hpp"
#include "pramtraj/harness.hpp"
#include "pramtraj/random.hpp"

namespace pramtraj {

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kBadArgs = 2;

struct Options {
  std::string algo;
  std::size_t n = 0;
  std::vector<std::size_t> n_list;
  std::size_t samples = 0;
  std::optional<std::uint64_t> seed;
  std::size_t max_degree = 3;
  std::string out_path;
  std::string input;
  std::string in_path;
  std::string pair;
  bool exhaustive = false;
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (auto s = env_seed()) return *s;
  return 0;
}

int cmd_gen(const Options& o, std::ostream& out) {
  GenConfig cfg;
  cfg.algo = parse_algorithm(o.algo);
  cfg.n_list = o.n > 0 ? std::vector<std::size_t>{o.n} : o.n_list;
  cfg.samples_per_n = o.samples;
  cfg.seed = resolve_seed(o);
  cfg.max_degree = o.max_degree;
  cfg.out_path = o.out_path;
  cfg.validate();
  const std::size_t count = write_dataset(cfg);
  out << "wrote " << count << " samples to " << cfg.out_path << " (schema "
      << schema_path(cfg.out_path) << ")\n";
  return kOk;
}

int cmd_trace(const Options& o, std::ostream& out) {
  const Algorithm algo = parse_algorithm(o.algo);
  const Instance inst = parse_inline_instance(algo, o.input);
  const AlgorithmRun run = run_algorithm(algo, inst);
  out << render_trace(run);
  if (task_of(algo) == Task::sort) {
    std::size_t rounds = 0;
    for (std::size_t k = 0; k < run.trace.depth(); ++k) rounds += !run.trace.local_writes(k).empty();
    out << "swap rounds " << rounds << '\n';
  }
  return kOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const Algorithm algo = parse_algorithm(o.algo);
  if (!o.exhaustive && o.samples < 1) throw std::invalid_argument("--samples must be >= 1");
  const auto rep = scaling_report(algo, o.n_list, o.samples, resolve_seed(o), o.max_degree, o.exhaustive);
  const std::string nd = report_ndjson(rep);
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + o.out_path + "' for writing");
    f << nd;
  } else {
    out << nd;
  }
  out << report_table(rep);
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream f(o.in_path, std::ios::binary);
  if (!f) {
    err << "error: cannot read '" << o.in_path << "'\n";
    return kBadArgs;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  std::vector<Sample> samples;
  try {
    samples = parse_ndjson(buf.str());
  } catch (const NdjsonError& e) {
    err << "malformed dataset: " << e.what() << '\n';
    return kInvalid;
  }
  // Prefer the sidecar schema; fall back to the built-in one per algorithm.
  std::optional<std::vector<ProbeSpec>> sidecar;
  if (std::ifstream sf(schema_path(o.in_path), std::ios::binary); sf) {
    std::stringstream sb;
    sb << sf.rdbuf();
    try {
      sidecar = parse_schema(sb.str());
    } catch (const NdjsonError& e) {
      err << "malformed schema: " << e.what() << '\n';
      return kInvalid;
    }
  }
  std::size_t bad = 0, total = 0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const Sample& s = samples[k];
    std::vector<std::string> v;
    if (sidecar) {
      v = validate_sample(s, *sidecar);
    } else if (auto algo = try_parse_algorithm(s.algo)) {
      v = validate_sample(s, probe_spec(*algo));
    } else {
      v.push_back("schema: unknown algorithm '" + s.algo + "'");
    }
    if (!v.empty()) ++bad;
    total += v.size();
    for (const auto& msg : v) out << "line " << (k + 1) << ": " << msg << '\n';
  }
  out << samples.size() << " samples, " << total << " violations\n";
  return bad == 0 ? kOk : kInvalid;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const Task task = parse_task(o.pair);
  if (o.n < 1) throw std::invalid_argument("--n must be >= 1");
  if (o.samples < 1) throw std::invalid_argument("--samples must be >= 1");
  const std::uint64_t seed = resolve_seed(o);
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s %5s %8s %6s %7s %10s %9s %9s %9s %9s\n", "algo", "n", "m",
                "width", "depth", "capacity", "eta", "eta_min", "eps_min", "eps_mean");
  out << buf;
  for (Algorithm algo : pair_of(task)) {
    std::vector<Trace> traces;
    traces.reserve(o.samples);
    for (std::size_t i = 0; i < o.samples; ++i) {
      const std::uint64_t s = sample_seed(seed, task_id(task), o.n, i);
      traces.push_back(run_algorithm(algo, generate_instance(algo, o.n, s, o.max_degree)).trace);
    }
    std::vector<const Trace*> ptrs;
    for (const auto& t : traces) ptrs.push_back(&t);
    const ScalingRecord r = aggregate(o.n, ptrs);
    std::snprintf(buf, sizeof buf, "%-16s %5zu %8.1f %6zu %7zu %10zu %9.4f %9.4f %9.5f %9.5f\n",
                  std::string(algorithm_id(algo)).c_str(), r.n, r.m, r.width, r.depth_max,
                  r.capacity, r.eta_mean, r.eta_min, r.eps_min, r.eps_mean);
    out << buf;
  }
  return kOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parallel-machine trajectory simulator", "pramtraj"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "Generate a hint-trajectory dataset and its schema");
  gen->add_option("--algo", o.algo, "Algorithm id")->required();
  auto* gen_n = gen->add_option("--n", o.n, "Input size");
  auto* gen_nl = gen->add_option("--n-list", o.n_list, "Comma-separated input sizes")->delimiter(',');
  gen_n->excludes(gen_nl);
  gen->add_option("--samples", o.samples, "Samples per size")->required();
  gen->add_option("--seed", o.seed, "Master seed (default: $PRAMTRAJ_SEED, else 0)");
  gen->add_option("--max-degree", o.max_degree, "Out-degree bound for digraphs");
  gen->add_option("--out", o.out_path, "Dataset path")->required();

  auto* trace = app.add_subcommand("trace", "Print a step-by-step trace for one inline input");
  trace->add_option("--algo", o.algo, "Algorithm id")->required();
  trace->add_option("--input", o.input, "Inline input: '3,1,2', 'A;x' or 'n:u->v,...'")->required();

  auto* analyze = app.add_subcommand("analyze", "Capacity and efficiency scaling report");
  analyze->add_option("--algo", o.algo, "Algorithm id")->required();
  analyze->add_option("--n-list", o.n_list, "Comma-separated input sizes")->delimiter(',')->required();
  analyze->add_option("--samples", o.samples, "Samples per size");
  analyze->add_option("--seed", o.seed, "Master seed (default: $PRAMTRAJ_SEED, else 0)");
  analyze->add_option("--max-degree", o.max_degree, "Out-degree bound for digraphs");
  analyze->add_option("--out", o.out_path, "Write the NDJSON report here instead of stdout");
  analyze->add_flag("--exhaustive", o.exhaustive, "Enumerate every input (n <= 6)");

  auto* validate = app.add_subcommand("validate", "Validate every sample of a dataset");
  validate->add_option("--in", o.in_path, "Dataset path")->required();

  auto* compare = app.add_subcommand("compare", "Parallel vs sequential metrics for one pair");
  compare->add_option("--pair", o.pair, "search, sort or scc")->required();
  compare->add_option("--n", o.n, "Input size")->required();
  compare->add_option("--samples", o.samples, "Samples")->required();
  compare->add_option("--seed", o.seed, "Master seed (default: $PRAMTRAJ_SEED, else 0)");
  compare->add_option("--max-degree", o.max_degree, "Out-degree bound for digraphs");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArgs;
  }

  try {
    if (*gen) {
      if (o.n == 0 && o.n_list.empty()) throw std::invalid_argument("one of --n or --n-list is required");
      return cmd_gen(o, out);
    }
    if (*trace) return cmd_trace(o, out);
    if (*analyze) return cmd_analyze(o, out);
    if (*validate) return cmd_validate(o, out, err);
    return cmd_compare(o, out);
  } catch (const UnknownAlgorithm& e) {
    err << "error: " << e.what() << '\n';
  } catch (const SampleFailure& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kBadArgs;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args, out, err);
}

}  // namespace pramtraj
