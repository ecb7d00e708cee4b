#pragma once

// Probe schemas, hint-trajectory samples and their NDJSON form.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pramtraj/algorithms.hpp"

namespace pramtraj {

enum class Stage { input, hint, output };
enum class Location { node, edge, graph };
enum class DType { scalar, mask, categorical };

std::string_view to_string(Stage s);
std::string_view to_string(Location l);
std::string_view to_string(DType d);

struct ProbeSpec {
  std::string name;
  Stage stage = Stage::input;
  Location location = Location::node;
  DType dtype = DType::scalar;
  /// Categoricals range over n + extra_categories values (1 for the search
  /// rank, whose extra category is the x node).
  std::size_t extra_categories = 0;
  bool operator==(const ProbeSpec&) const = default;
};

/// Fixed schema of `algo`.
std::vector<ProbeSpec> probe_spec(Algorithm algo);
/// Throws UnknownAlgorithm.
std::vector<ProbeSpec> probe_spec(std::string_view algo_id);

/// One probe payload: n values for node probes, n*n row-major for edge
/// probes, a single value for graph probes. Categoricals hold category
/// indices.
struct Field {
  Location location = Location::graph;
  std::vector<double> values;
  bool operator==(const Field&) const = default;
};

using FieldMap = std::map<std::string, Field>;

struct HintFrame {
  std::size_t step = 0;
  FieldMap values;
  bool operator==(const HintFrame&) const = default;
};

struct StepActivity {
  std::size_t nodes = 0;        // active nodes
  std::size_t edges = 0;        // active node-to-node edges, self-edges included
  std::size_t graph_edges = 0;  // node <-> shared-memory pseudo-edges
  std::size_t ops = 0;          // op_count, graph feature included
  std::size_t a = 0;            // distinct active edges of the operated graph
  bool graph_op = false;
  bool operator==(const StepActivity&) const = default;
};

struct ActivitySummary {
  std::size_t width = 0;
  std::size_t m = 0;  // operated-graph edge count
  std::vector<StepActivity> steps;
  bool operator==(const ActivitySummary&) const = default;
};

struct Sample {
  std::string algo;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  FieldMap inputs;
  std::vector<HintFrame> hints;
  FieldMap outputs;
  ActivitySummary activity;
  bool operator==(const Sample&) const = default;
};

class SchemaMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ActivitySummary summarize_activity(const Trace& trace);

/// Builds the sample for `run` on `inst`; positional scalars are drawn from
/// `seed`. Throws SchemaMismatch when the trace does not belong to the
/// algorithm or lacks a state a probe needs.
Sample encode_sample(Algorithm algo, const Instance& inst, const AlgorithmRun& run,
                     std::uint64_t seed);

/// Empty when the sample conforms. Violation strings start with a category:
/// "shape", "mask domain", "category range", "hints length", "schema",
/// "positional", "monotonicity", "final frame" or "replay".
std::vector<std::string> validate_sample(const Sample& sample, const std::vector<ProbeSpec>& spec);

/// Re-derives the output from the hint frames alone by applying each frame's
/// transition; returns the reconstructed output field (keyed by output name)
/// or nullopt with a reason in `why` when the frames are inconsistent.
std::optional<FieldMap> replay_hints(const Sample& sample, std::string* why = nullptr);

class NdjsonError : public std::runtime_error {
 public:
  NdjsonError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One JSON object per sample, LF terminated; sorted keys, doubles with 17
/// significant digits.
std::string serialize_ndjson(const std::vector<Sample>& samples);
std::string serialize_sample(const Sample& sample);
/// Throws NdjsonError carrying the 1-based line number.
std::vector<Sample> parse_ndjson(std::string_view text);

std::string serialize_schema(const std::vector<ProbeSpec>& spec);
std::vector<ProbeSpec> parse_schema(std::string_view text);

}  // namespace pramtraj
