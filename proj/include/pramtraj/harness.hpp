#pragma once

// Dataset production and the command-line entry point.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pramtraj/algorithms.hpp"
#include "pramtraj/trajectory.hpp"

namespace pramtraj {

struct GenConfig {
  Algorithm algo = Algorithm::parallel_search;
  std::vector<std::size_t> n_list;
  std::size_t samples_per_n = 1;
  std::uint64_t seed = 0;
  std::size_t max_degree = 3;
  std::string out_path;
  /// Throws std::invalid_argument when an invariant fails.
  void validate() const;
};

/// Sample `index` at size `n`; depends on nothing else, so batches can be
/// produced in any order.
Sample make_sample(Algorithm algo, std::size_t n, std::size_t index, std::uint64_t master_seed,
                   std::size_t max_degree = 3);

/// All samples of `cfg`, ordered by n then sample index.
std::vector<Sample> generate_dataset(const GenConfig& cfg);

/// `d.ndjson` -> `d.schema`.
std::string schema_path(const std::string& dataset_path);

/// Writes the dataset and its schema sidecar; returns the sample count.
std::size_t write_dataset(const GenConfig& cfg);

/// Parses the inline grammar used by `trace`: "3,1,2" for sorts, "A;x" for
/// search ("9,7,5;5"), "n:u->v,..." for digraphs. Throws
/// std::invalid_argument with a description of the problem.
Instance parse_inline_instance(Algorithm algo, const std::string& text);

/// Human-readable step-by-step rendering of a run.
std::string render_trace(const AlgorithmRun& run);

/// Master seed from PRAMTRAJ_SEED, if set and well formed.
std::optional<std::uint64_t> env_seed();

/// Exit codes: 0 success, 1 validation failure, 2 bad arguments or input.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pramtraj
