#pragma once

// Capacity, node efficiency and edge efficiency of traces, plus scaling
// reports that fit log-log slopes against the asymptotic classes.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pramtraj/algorithms.hpp"

namespace pramtraj {

struct ActivitySummary;

/// width x depth.
std::size_t capacity(const Trace& t);
std::size_t capacity(const ActivitySummary& a);

/// Sum of op_count over all steps; optionally without the graph feature.
std::size_t op_total(const Trace& t, bool include_graph_op = true);
std::size_t op_total(const ActivitySummary& a, bool include_graph_op = true);

/// op_total / capacity; 1 for a zero-depth trace.
double node_efficiency(const Trace& t, bool include_graph_op = true);
double node_efficiency(const ActivitySummary& a, bool include_graph_op = true);

/// Distinct operated-graph edges active in step index `k`. A recorded edge
/// (j, i) counts as the operated edge (j, i) when present, else as (i, j);
/// self-edges and pseudo-edges never count.
std::size_t operated_active_edges(const Trace& t, std::size_t k);
/// All active node-to-node edges of step `k`, self-edges included.
std::size_t total_active_edges(const Trace& t, std::size_t k);

/// (1/T) sum_t a(t)/m for one trace; 1 when T = 0 or m = 0.
double edge_efficiency(const Trace& t);
double edge_efficiency(const ActivitySummary& a);

struct EdgeEfficiency {
  double eps_min = 0.0;
  double eps_mean = 0.0;
};

/// Over traces of one algorithm at one n. Throws std::invalid_argument on an
/// empty list.
EdgeEfficiency edge_efficiency(std::span<const Trace* const> traces);

struct ScalingRecord {
  std::size_t n = 0;
  std::size_t samples = 0;
  double m = 0.0;  // mean operated-graph edge count
  std::size_t width = 0;
  std::size_t depth_max = 0;
  double depth_mean = 0.0;
  std::size_t capacity = 0;  // width x depth_max
  std::size_t op_total = 0;  // summed over samples
  double eta_mean = 0.0;
  double eta_min = 0.0;
  double eta_no_graph = 0.0;  // mean, graph-feature operations excluded
  double eps_mean = 0.0;
  double eps_min = 0.0;
  std::size_t zero_depth = 0;  // traces whose eta fell back to 1
  /// Mean a(t) at step t over the samples that reach step t.
  std::vector<double> active_edge_profile;
};

struct ClassFit {
  std::string metric;
  double slope = 0.0;
  std::string nearest;    // e.g. "n log n"
  double class_slope = 0.0;
  bool within_band = false;  // |slope - class_slope| <= 0.2
};

struct EfficiencyReport {
  std::string algo_id;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  std::vector<ScalingRecord> records;
  std::vector<ClassFit> fits;  // capacity, eta, eps
};

/// Carries the seed of the instance whose run failed.
class SampleFailure : public std::runtime_error {
 public:
  SampleFailure(std::uint64_t seed, const std::string& what);
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Nearest asymptotic class for `metric` ("capacity", "eta" or "eps"). Class
/// slopes are fitted over the same n values, so n log n is handled fairly.
ClassFit classify(const std::string& metric, std::span<const double> n, std::span<const double> y);

/// Inputs enumerated by exhaustive mode: every rank position (search) or
/// every permutation (sort). Throws std::invalid_argument for SCC or n > 6.
std::vector<Instance> exhaustive_instances(Algorithm algo, std::size_t n);

/// Generates samples_per_n instances per n (or enumerates them when
/// `exhaustive`), runs the algorithm and aggregates. n_list must be
/// ascending with at least three sizes.
EfficiencyReport scaling_report(Algorithm algo, const std::vector<std::size_t>& n_list,
                                std::size_t samples_per_n, std::uint64_t seed,
                                std::size_t max_degree = 3, bool exhaustive = false);

/// Aggregates already computed traces of a single n.
ScalingRecord aggregate(std::size_t n, std::span<const Trace* const> traces);

/// NDJSON records (one per n, then one per fit) and a fixed-width table.
std::string report_ndjson(const EfficiencyReport& r);
std::string report_table(const EfficiencyReport& r);

}  // namespace pramtraj
