#pragma once

#include <json.hpp>
#include <string>

namespace pramtraj::detail {

/// Compact JSON with sorted keys and doubles printed as %.17g, so the same
/// value always yields the same bytes and parses back bit-exactly.
void dump_canonical(const nlohmann::json& j, std::string& out);

inline std::string dump_canonical(const nlohmann::json& j) {
  std::string s;
  dump_canonical(j, s);
  return s;
}

}  // namespace pramtraj::detail
