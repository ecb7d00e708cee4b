#include <json.hpp>

#include "json_writer.hpp"
#include "pramtraj/trajectory.hpp"

namespace pramtraj {

using nlohmann::json;

NdjsonError::NdjsonError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

json field_to_json(const Field& f, std::size_t n) {
  switch (f.location) {
    case Location::graph:
      if (f.values.size() != 1) throw std::invalid_argument("graph field must hold one value");
      return f.values[0];
    case Location::node: {
      json a = json::array();
      for (double v : f.values) a.push_back(v);
      return a;
    }
    default: {
      if (f.values.size() != n * n) throw std::invalid_argument("edge field must hold n*n values");
      json rows = json::array();
      for (std::size_t r = 0; r < n; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < n; ++c) row.push_back(f.values[r * n + c]);
        rows.push_back(std::move(row));
      }
      return rows;
    }
  }
}

json map_to_json(const FieldMap& m, std::size_t n) {
  json o = json::object();
  for (const auto& [k, f] : m) o[k] = field_to_json(f, n);
  return o;
}

double number(const json& j) {
  if (!j.is_number()) throw std::invalid_argument("expected a number");
  return j.get<double>();
}

Field field_from_json(const json& j) {
  Field f;
  if (j.is_number()) {
    f.location = Location::graph;
    f.values.push_back(number(j));
  } else if (j.is_array() && !j.empty() && j.front().is_array()) {
    f.location = Location::edge;
    const std::size_t cols = j.size();
    for (const json& row : j) {
      if (!row.is_array() || row.size() != cols) throw std::invalid_argument("edge field must be square");
      for (const json& v : row) f.values.push_back(number(v));
    }
  } else if (j.is_array()) {
    f.location = Location::node;
    for (const json& v : j) f.values.push_back(number(v));
  } else {
    throw std::invalid_argument("field must be a number or an array");
  }
  return f;
}

FieldMap map_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("expected an object of fields");
  FieldMap m;
  for (auto it = j.begin(); it != j.end(); ++it) m[it.key()] = field_from_json(it.value());
  return m;
}

std::size_t count(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw std::invalid_argument(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

json sample_to_json(const Sample& s) {
  json j;
  j["algo"] = s.algo;
  j["n"] = s.n;
  j["seed"] = s.seed;
  j["inputs"] = map_to_json(s.inputs, s.n);
  j["outputs"] = map_to_json(s.outputs, s.n);
  json hints = json::array();
  for (const auto& h : s.hints) hints.push_back({{"step", h.step}, {"values", map_to_json(h.values, s.n)}});
  j["hints"] = std::move(hints);
  json steps = json::array();
  for (const auto& a : s.activity.steps)
    steps.push_back({{"nodes", a.nodes},
                     {"edges", a.edges},
                     {"graph_edges", a.graph_edges},
                     {"ops", a.ops},
                     {"a", a.a},
                     {"graph_op", a.graph_op}});
  j["activity"] = {{"width", s.activity.width}, {"m", s.activity.m}, {"steps", std::move(steps)}};
  return j;
}

Sample sample_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("sample must be a JSON object");
  Sample s;
  s.algo = j.at("algo").get<std::string>();
  s.n = count(j, "n");
  s.seed = j.at("seed").get<std::uint64_t>();
  s.inputs = map_from_json(j.at("inputs"));
  s.outputs = map_from_json(j.at("outputs"));
  for (const json& h : j.at("hints")) {
    HintFrame f;
    f.step = count(h, "step");
    f.values = map_from_json(h.at("values"));
    s.hints.push_back(std::move(f));
  }
  const json& a = j.at("activity");
  s.activity.width = count(a, "width");
  s.activity.m = count(a, "m");
  for (const json& st : a.at("steps")) {
    StepActivity x;
    x.nodes = count(st, "nodes");
    x.edges = count(st, "edges");
    x.graph_edges = count(st, "graph_edges");
    x.ops = count(st, "ops");
    x.a = count(st, "a");
    x.graph_op = st.at("graph_op").get<bool>();
    s.activity.steps.push_back(x);
  }
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace

std::string serialize_sample(const Sample& s) { return detail::dump_canonical(sample_to_json(s)); }

std::string serialize_ndjson(const std::vector<Sample>& samples) {
  std::string out;
  for (const auto& s : samples) {
    detail::dump_canonical(sample_to_json(s), out);
    out += '\n';
  }
  return out;
}

std::vector<Sample> parse_ndjson(std::string_view text) {
  std::vector<Sample> out;
  const auto lines = split_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    std::string_view line = lines[k];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) throw NdjsonError(k + 1, "empty line");
    try {
      out.push_back(sample_from_json(json::parse(line.begin(), line.end())));
    } catch (const json::exception& e) {
      throw NdjsonError(k + 1, e.what());
    } catch (const std::invalid_argument& e) {
      throw NdjsonError(k + 1, e.what());
    }
  }
  return out;
}

std::string serialize_schema(const std::vector<ProbeSpec>& spec) {
  std::string out;
  for (const auto& p : spec) {
    json j = {{"name", p.name},
              {"stage", std::string(to_string(p.stage))},
              {"location", std::string(to_string(p.location))},
              {"dtype", std::string(to_string(p.dtype))},
              {"extra_categories", p.extra_categories}};
    detail::dump_canonical(j, out);
    out += '\n';
  }
  return out;
}

std::vector<ProbeSpec> parse_schema(std::string_view text) {
  std::vector<ProbeSpec> out;
  const auto lines = split_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    try {
      json j = json::parse(lines[k].begin(), lines[k].end());
      ProbeSpec p;
      p.name = j.at("name").get<std::string>();
      const auto stage = j.at("stage").get<std::string>();
      const auto loc = j.at("location").get<std::string>();
      const auto dtype = j.at("dtype").get<std::string>();
      if (stage == "input") p.stage = Stage::input;
      else if (stage == "hint") p.stage = Stage::hint;
      else if (stage == "output") p.stage = Stage::output;
      else throw std::invalid_argument("unknown stage '" + stage + "'");
      if (loc == "node") p.location = Location::node;
      else if (loc == "edge") p.location = Location::edge;
      else if (loc == "graph") p.location = Location::graph;
      else throw std::invalid_argument("unknown location '" + loc + "'");
      if (dtype == "scalar") p.dtype = DType::scalar;
      else if (dtype == "mask") p.dtype = DType::mask;
      else if (dtype == "categorical") p.dtype = DType::categorical;
      else throw std::invalid_argument("unknown dtype '" + dtype + "'");
      p.extra_categories = j.at("extra_categories").get<std::size_t>();
      out.push_back(std::move(p));
    } catch (const json::exception& e) {
      throw NdjsonError(k + 1, e.what());
    } catch (const std::invalid_argument& e) {
      throw NdjsonError(k + 1, e.what());
    }
  }
  return out;
}

}  // namespace pramtraj
