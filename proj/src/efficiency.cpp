#include "pramtraj/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "json_writer.hpp"
#include "pramtraj/random.hpp"
#include "pramtraj/trajectory.hpp"

namespace pramtraj {

std::size_t capacity(const Trace& t) { return t.width() * t.depth(); }
std::size_t capacity(const ActivitySummary& a) { return a.width * a.steps.size(); }

std::size_t op_total(const Trace& t, bool include_graph_op) {
  std::size_t total = 0;
  for (std::size_t k = 0; k < t.depth(); ++k) {
    const ActivityView v = t.activity(k);
    total += include_graph_op ? v.op_count : v.active_nodes.size();
  }
  return total;
}

std::size_t op_total(const ActivitySummary& a, bool include_graph_op) {
  std::size_t total = 0;
  for (const auto& s : a.steps) total += include_graph_op ? s.ops : s.nodes;
  return total;
}

double node_efficiency(const Trace& t, bool include_graph_op) {
  const std::size_t c = capacity(t);
  return c == 0 ? 1.0 : static_cast<double>(op_total(t, include_graph_op)) / static_cast<double>(c);
}

double node_efficiency(const ActivitySummary& a, bool include_graph_op) {
  const std::size_t c = capacity(a);
  return c == 0 ? 1.0 : static_cast<double>(op_total(a, include_graph_op)) / static_cast<double>(c);
}

std::size_t operated_active_edges(const Trace& t, std::size_t k) {
  const InterconnectionGraph& g = t.operated_graph();
  const ActivityView v = t.activity(k);
  std::vector<Edge> hit;
  hit.reserve(v.active_edges.size());
  for (const ActiveEdge& e : v.active_edges) {
    if (e.graph_level || e.from == e.to) continue;
    if (g.has_edge(e.from, e.to))
      hit.push_back({e.from, e.to});
    else if (g.has_edge(e.to, e.from))
      hit.push_back({e.to, e.from});
  }
  std::sort(hit.begin(), hit.end());
  return static_cast<std::size_t>(std::unique(hit.begin(), hit.end()) - hit.begin());
}

std::size_t total_active_edges(const Trace& t, std::size_t k) {
  const ActivityView v = t.activity(k);
  return static_cast<std::size_t>(std::count_if(v.active_edges.begin(), v.active_edges.end(),
                                                [](const ActiveEdge& e) { return !e.graph_level; }));
}

double edge_efficiency(const Trace& t) {
  const std::size_t m = t.operated_graph().edge_count();
  if (m == 0 || t.depth() == 0) return 1.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < t.depth(); ++k)
    sum += static_cast<double>(operated_active_edges(t, k)) / static_cast<double>(m);
  return sum / static_cast<double>(t.depth());
}

double edge_efficiency(const ActivitySummary& a) {
  if (a.m == 0 || a.steps.empty()) return 1.0;
  double sum = 0.0;
  for (const auto& s : a.steps) sum += static_cast<double>(s.a) / static_cast<double>(a.m);
  return sum / static_cast<double>(a.steps.size());
}

EdgeEfficiency edge_efficiency(std::span<const Trace* const> traces) {
  if (traces.empty()) throw std::invalid_argument("edge efficiency needs at least one trace");
  EdgeEfficiency r;
  r.eps_min = 1.0;
  double sum = 0.0;
  bool first = true;
  for (const Trace* t : traces) {
    const double e = edge_efficiency(*t);
    r.eps_min = first ? e : std::min(r.eps_min, e);
    first = false;
    sum += e;
  }
  r.eps_mean = sum / static_cast<double>(traces.size());
  return r;
}

SampleFailure::SampleFailure(std::uint64_t seed, const std::string& what)
    : std::runtime_error(what + " (instance seed " + std::to_string(seed) + ")"), seed_(seed) {}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("slope fit needs at least two matching points");
  const double k = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::domain_error("log-log fit needs positive values");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = k * sxx - sx * sx;
  if (den == 0) throw std::domain_error("slope fit needs at least two distinct n");
  return (k * sxy - sx * sy) / den;
}

namespace {

struct ClassShape {
  const char* name;
  double (*f)(double);
};

constexpr ClassShape kCapacityClasses[] = {
    {"n", [](double n) { return n; }},
    {"n log n", [](double n) { return n * std::log2(n + 1.0); }},
    {"n^2", [](double n) { return n * n; }},
    {"n^3", [](double n) { return n * n * n; }},
};
constexpr ClassShape kEtaClasses[] = {
    {"1", [](double) { return 1.0; }},
    {"n^-1", [](double n) { return 1.0 / n; }},
};
constexpr ClassShape kEpsClasses[] = {
    {"1", [](double) { return 1.0; }},
    {"n^-1", [](double n) { return 1.0 / n; }},
    {"n^-2", [](double n) { return 1.0 / (n * n); }},
};

}  // namespace

ClassFit classify(const std::string& metric, std::span<const double> n, std::span<const double> y) {
  std::span<const ClassShape> classes;
  if (metric == "capacity")
    classes = kCapacityClasses;
  else if (metric == "eta")
    classes = kEtaClasses;
  else if (metric == "eps")
    classes = kEpsClasses;
  else
    throw std::invalid_argument("unknown metric '" + metric + "'");
  ClassFit fit;
  fit.metric = metric;
  fit.slope = loglog_slope(n, y);
  double best = 0;
  bool first = true;
  for (const ClassShape& c : classes) {
    std::vector<double> cy(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) cy[i] = c.f(n[i]);
    // Constant shapes have slope 0 by definition; the fit would divide by zero.
    const double cs = metric != "capacity" && c.f(2.0) == c.f(4.0) ? 0.0 : loglog_slope(n, cy);
    const double d = std::abs(fit.slope - cs);
    if (first || d < best) {
      best = d;
      fit.nearest = c.name;
      fit.class_slope = cs;
      first = false;
    }
  }
  fit.within_band = best <= 0.2;
  return fit;
}

std::vector<Instance> exhaustive_instances(Algorithm algo, std::size_t n) {
  if (n < 1 || n > 6) throw std::invalid_argument("exhaustive mode supports 1 <= n <= 6");
  std::vector<Instance> out;
  const double dn = static_cast<double>(n);
  switch (task_of(algo)) {
    case Task::search: {
      SearchInstance base;
      for (std::size_t i = 0; i < n; ++i) base.items.push_back(static_cast<double>(n - i) / dn);
      // One query per rank 0..n.
      for (std::size_t r = 0; r <= n; ++r) {
        SearchInstance s = base;
        if (r == 0)
          s.x = base.items[0];
        else if (r == n)
          s.x = base.items[n - 1] - 0.5 / dn;
        else
          s.x = 0.5 * (base.items[r] + base.items[r - 1]);
        out.push_back(std::move(s));
      }
      break;
    }
    case Task::sort: {
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        SortInstance s;
        for (std::size_t k : perm) s.items.push_back((static_cast<double>(k) + 0.5) / dn);
        out.push_back(std::move(s));
      } while (std::next_permutation(perm.begin(), perm.end()));
      break;
    }
    case Task::scc:
      throw std::invalid_argument("exhaustive mode covers searching and sorting only");
  }
  return out;
}

namespace {

class Accumulator {
 public:
  explicit Accumulator(std::size_t n) { rec_.n = n; }

  void add(const Trace& t) {
    const double eta = node_efficiency(t);
    const double eps = edge_efficiency(t);
    const bool first = rec_.samples == 0;
    ++rec_.samples;
    m_sum_ += static_cast<double>(t.operated_graph().edge_count());
    rec_.width = std::max(rec_.width, t.width());
    rec_.depth_max = std::max(rec_.depth_max, t.depth());
    depth_sum_ += static_cast<double>(t.depth());
    rec_.op_total += op_total(t);
    eta_sum_ += eta;
    eta_ng_sum_ += node_efficiency(t, false);
    eps_sum_ += eps;
    rec_.eta_min = first ? eta : std::min(rec_.eta_min, eta);
    rec_.eps_min = first ? eps : std::min(rec_.eps_min, eps);
    if (t.depth() == 0) ++rec_.zero_depth;
    if (profile_sum_.size() < t.depth()) {
      profile_sum_.resize(t.depth(), 0.0);
      profile_count_.resize(t.depth(), 0);
    }
    for (std::size_t k = 0; k < t.depth(); ++k) {
      profile_sum_[k] += static_cast<double>(operated_active_edges(t, k));
      ++profile_count_[k];
    }
  }

  ScalingRecord finish() {
    if (rec_.samples == 0) throw std::invalid_argument("aggregate needs at least one trace");
    const double s = static_cast<double>(rec_.samples);
    rec_.m = m_sum_ / s;
    rec_.depth_mean = depth_sum_ / s;
    rec_.capacity = rec_.width * rec_.depth_max;
    rec_.eta_mean = eta_sum_ / s;
    rec_.eta_no_graph = eta_ng_sum_ / s;
    rec_.eps_mean = eps_sum_ / s;
    rec_.active_edge_profile.resize(profile_sum_.size());
    for (std::size_t k = 0; k < profile_sum_.size(); ++k)
      rec_.active_edge_profile[k] = profile_sum_[k] / static_cast<double>(profile_count_[k]);
    return rec_;
  }

 private:
  ScalingRecord rec_;
  double m_sum_ = 0, depth_sum_ = 0, eta_sum_ = 0, eta_ng_sum_ = 0, eps_sum_ = 0;
  std::vector<double> profile_sum_;
  std::vector<std::size_t> profile_count_;
};

}  // namespace

ScalingRecord aggregate(std::size_t n, std::span<const Trace* const> traces) {
  Accumulator acc(n);
  for (const Trace* t : traces) acc.add(*t);
  return acc.finish();
}

EfficiencyReport scaling_report(Algorithm algo, const std::vector<std::size_t>& n_list,
                                std::size_t samples_per_n, std::uint64_t seed,
                                std::size_t max_degree, bool exhaustive) {
  if (n_list.size() < 3) throw std::invalid_argument("scaling reports need at least three sizes");
  if (!std::is_sorted(n_list.begin(), n_list.end()) ||
      std::adjacent_find(n_list.begin(), n_list.end()) != n_list.end())
    throw std::invalid_argument("n_list must be strictly ascending");
  if (n_list.front() < 1) throw std::invalid_argument("n must be >= 1");
  if (!exhaustive && samples_per_n < 1) throw std::invalid_argument("samples_per_n must be >= 1");

  EfficiencyReport rep;
  rep.algo_id = std::string(algorithm_id(algo));
  rep.exhaustive = exhaustive;
  rep.seed = seed;
  const std::string family(task_id(task_of(algo)));
  for (std::size_t n : n_list) {
    Accumulator acc(n);
    if (exhaustive) {
      for (const Instance& inst : exhaustive_instances(algo, n))
        acc.add(run_algorithm(algo, inst).trace);
    } else {
      for (std::size_t idx = 0; idx < samples_per_n; ++idx) {
        const std::uint64_t s = sample_seed(seed, family, n, idx);
        try {
          acc.add(run_algorithm(algo, generate_instance(algo, n, s, max_degree)).trace);
        } catch (const std::exception& e) {
          throw SampleFailure(s, e.what());
        }
      }
    }
    rep.records.push_back(acc.finish());
  }

  std::vector<double> ns, cap, eta, eps;
  for (const auto& r : rep.records) {
    ns.push_back(static_cast<double>(r.n));
    cap.push_back(static_cast<double>(r.capacity));
    eta.push_back(r.eta_mean);
    eps.push_back(r.eps_mean);
  }
  // Zero capacity (n = 1 sorts, for instance) has no logarithm; fit only
  // where every value is positive.
  auto positive = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x > 0; });
  };
  if (positive(cap)) rep.fits.push_back(classify("capacity", ns, cap));
  if (positive(eta)) rep.fits.push_back(classify("eta", ns, eta));
  if (positive(eps)) rep.fits.push_back(classify("eps", ns, eps));
  return rep;
}

std::string report_ndjson(const EfficiencyReport& r) {
  std::string out;
  for (const auto& rec : r.records) {
    nlohmann::json j;
    j["kind"] = "record";
    j["algo"] = r.algo_id;
    j["exhaustive"] = r.exhaustive;
    j["seed"] = r.seed;
    j["n"] = rec.n;
    j["samples"] = rec.samples;
    j["m"] = rec.m;
    j["width"] = rec.width;
    j["depth_max"] = rec.depth_max;
    j["depth_mean"] = rec.depth_mean;
    j["capacity"] = rec.capacity;
    j["op_total"] = rec.op_total;
    j["eta_mean"] = rec.eta_mean;
    j["eta_min"] = rec.eta_min;
    j["eta_no_graph"] = rec.eta_no_graph;
    j["eps_mean"] = rec.eps_mean;
    j["eps_min"] = rec.eps_min;
    j["zero_depth"] = rec.zero_depth;
    j["active_edge_profile"] = rec.active_edge_profile;
    detail::dump_canonical(j, out);
    out += '\n';
  }
  for (const auto& f : r.fits) {
    nlohmann::json j;
    j["kind"] = "fit";
    j["algo"] = r.algo_id;
    j["metric"] = f.metric;
    j["slope"] = f.slope;
    j["class"] = f.nearest;
    j["class_slope"] = f.class_slope;
    j["within_band"] = f.within_band;
    detail::dump_canonical(j, out);
    out += '\n';
  }
  return out;
}

std::string report_table(const EfficiencyReport& r) {
  std::string cap_class = "-";
  for (const auto& f : r.fits)
    if (f.metric == "capacity") cap_class = f.nearest;
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s %5s %8s %6s %7s %10s %9s %9s %9s  %s\n", "algo", "n", "m",
                "width", "depth", "capacity", "eta", "eps_min", "eps_mean", "class");
  out += buf;
  for (const auto& rec : r.records) {
    std::snprintf(buf, sizeof buf, "%-16s %5zu %8.1f %6zu %7zu %10zu %9.4f %9.5f %9.5f  %s\n",
                  r.algo_id.c_str(), rec.n, rec.m, rec.width, rec.depth_max, rec.capacity,
                  rec.eta_mean, rec.eps_min, rec.eps_mean, cap_class.c_str());
    out += buf;
  }
  for (const auto& f : r.fits) {
    std::snprintf(buf, sizeof buf, "fit %-8s slope %+.3f  nearest %-8s (%+.3f)%s\n",
                  f.metric.c_str(), f.slope, f.nearest.c_str(), f.class_slope,
                  f.within_band ? "" : "  outside band");
    out += buf;
  }
  return out;
}

}  // namespace pramtraj
