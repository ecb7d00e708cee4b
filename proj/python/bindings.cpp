#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pramtraj/efficiency.hpp"
#include "pramtraj/harness.hpp"
#include "pramtraj/trajectory.hpp"

namespace py = pybind11;
using namespace pramtraj;

namespace {

py::object output_of(const Output& out) {
  return std::visit(
      [](const auto& o) -> py::object {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Rank>)
          return py::int_(o.value);
        else if constexpr (std::is_same_v<T, PredecessorPointers>)
          return py::cast(o.order());
        else
          return py::cast(o.normalized().scc_ptr);
      },
      out);
}

py::dict run_inline(const std::string& algo_id, const std::string& input) {
  const Algorithm algo = parse_algorithm(algo_id);
  const AlgorithmRun run = run_algorithm(algo, parse_inline_instance(algo, input));
  py::dict d;
  d["algo"] = algo_id;
  d["output"] = output_of(run.output);
  d["width"] = run.trace.width();
  d["depth"] = run.trace.depth();
  d["capacity"] = capacity(run.trace);
  d["op_total"] = op_total(run.trace);
  d["eta"] = node_efficiency(run.trace);
  d["eps"] = edge_efficiency(run.trace);
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < run.trace.depth(); ++k) active.push_back(run.trace.activity(k).active_nodes.size());
  d["active_nodes"] = active;
  return d;
}

std::vector<std::string> validate_text(const std::string& text) {
  std::vector<std::string> out;
  const auto samples = parse_ndjson(text);
  for (std::size_t k = 0; k < samples.size(); ++k)
    for (const auto& v : validate_sample(samples[k], probe_spec(samples[k].algo)))
      out.push_back("line " + std::to_string(k + 1) + ": " + v);
  return out;
}

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Trajectory simulator core";
  py::register_exception<UnknownAlgorithm>(m, "UnknownAlgorithm", PyExc_ValueError);
  py::register_exception<NdjsonError>(m, "NdjsonError", PyExc_ValueError);

  m.def("algorithms", [] {
    std::vector<std::string> ids;
    for (Algorithm a : kAllAlgorithms) ids.emplace_back(algorithm_id(a));
    return ids;
  });
  m.def("run", &run_inline, py::arg("algo"), py::arg("input"),
        "Run one algorithm on an inline input and return its output and metrics.");
  m.def(
      "sample_ndjson",
      [](const std::string& algo, std::size_t n, std::size_t index, std::uint64_t seed, std::size_t max_degree) {
        return serialize_sample(make_sample(parse_algorithm(algo), n, index, seed, max_degree));
      },
      py::arg("algo"), py::arg("n"), py::arg("index"), py::arg("seed"), py::arg("max_degree") = 3);
  m.def(
      "generate_ndjson",
      [](const std::string& algo, std::vector<std::size_t> n_list, std::size_t samples, std::uint64_t seed,
         std::size_t max_degree) {
        GenConfig cfg{parse_algorithm(algo), std::move(n_list), samples, seed, max_degree, ""};
        cfg.validate();
        return serialize_ndjson(generate_dataset(cfg));
      },
      py::arg("algo"), py::arg("n_list"), py::arg("samples"), py::arg("seed"), py::arg("max_degree") = 3);
  m.def("validate_ndjson", &validate_text, py::arg("text"), "Violations of every sample in an NDJSON text.");
  m.def("schema_json", [](const std::string& algo) { return serialize_schema(probe_spec(algo)); }, py::arg("algo"));
  m.def(
      "analyze_ndjson",
      [](const std::string& algo, std::vector<std::size_t> n_list, std::size_t samples, std::uint64_t seed,
         bool exhaustive) {
        return report_ndjson(scaling_report(parse_algorithm(algo), n_list, samples, seed, 3, exhaustive));
      },
      py::arg("algo"), py::arg("n_list"), py::arg("samples") = 1, py::arg("seed") = 0,
      py::arg("exhaustive") = false);
  m.def("cli", &cli, py::arg("args"), "Run the command-line interface; returns (code, stdout, stderr).");
}
