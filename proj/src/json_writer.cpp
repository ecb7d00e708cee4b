#include "json_writer.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pramtraj::detail {

namespace {

void dump_string(const std::string& s, std::string& out) {
  // nlohmann's escaping is already canonical for strings.
  out += nlohmann::json(s).dump();
}

void dump_double(double d, std::string& out) {
  if (!std::isfinite(d)) throw std::domain_error("non-finite value cannot be serialized");
  char buf[32];
  int len = std::snprintf(buf, sizeof buf, "%.17g", d);
  out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace

void dump_canonical(const nlohmann::json& j, std::string& out) {
  using V = nlohmann::json::value_t;
  switch (j.type()) {
    case V::object: {
      out += '{';
      bool first = true;
      // nlohmann::json objects are std::map backed, so iteration is sorted.
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        dump_string(it.key(), out);
        out += ':';
        dump_canonical(it.value(), out);
      }
      out += '}';
      break;
    }
    case V::array: {
      out += '[';
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ',';
        dump_canonical(j[k], out);
      }
      out += ']';
      break;
    }
    case V::number_float: dump_double(j.get<double>(), out); break;
    case V::string: dump_string(j.get_ref<const std::string&>(), out); break;
    default: out += j.dump(); break;
  }
}

}  // namespace pramtraj::detail
