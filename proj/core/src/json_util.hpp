#pragma once

// Internal helpers shared by the JSON readers/writers. Readers are strict:
// objects must carry exactly the expected keys.

#include <initializer_list>
#include <string>

#include <json.hpp>

#include "speq/error.hpp"
#include "speq/rational.hpp"
#include "speq/simplex_grid.hpp"

namespace speq::detail {

using nlohmann::json;

inline void require_keys(const json& j, std::initializer_list<const char*> keys,
                         const std::string& context) {
  if (!j.is_object()) raise(Errc::invalid_config, context + ": expected an object");
  for (const char* k : keys)
    if (!j.contains(k))
      raise(Errc::invalid_config, context + ": missing field \"" + k + "\"");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys)
      if (it.key() == k) known = true;
    if (!known)
      raise(Errc::invalid_config, context + ": unknown field \"" + it.key() + "\"");
  }
}

inline Rational rational_from_json(const json& v, const std::string& context) {
  if (v.is_number_integer()) return Rational(BigInt(v.get<std::int64_t>()));
  if (v.is_number_float()) return Rational(v.get<double>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  raise(Errc::invalid_config, context + ": expected a number");
}

inline json cell_to_json(const GridCell& cell) {
  json j;
  j["base"] = cell.base;
  j["perm"] = cell.perm;
  return j;
}

inline GridCell cell_from_json(const json& j, const std::string& context) {
  require_keys(j, {"base", "perm"}, context);
  GridCell cell;
  cell.base = j.at("base").get<GridVertex>();
  cell.perm = j.at("perm").get<std::vector<int>>();
  return cell;
}

// Parses text and reports failures with line/column diagnostics.
inline json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    std::size_t limit = e.byte > 0 ? e.byte - 1 : 0;
    for (std::size_t i = 0; i < limit && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    raise(Errc::invalid_config, "parse error at line " + std::to_string(line) +
                                    ", column " + std::to_string(column) + ": " +
                                    e.what());
  }
}

}  // namespace speq::detail
