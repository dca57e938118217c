#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "mahler/io.hpp"

// Schema shape of a JSON document: object keys kept in order, arrays
// reduced to the shape of their first element, leaves replaced by type names.
namespace testing_json {

using mahler::io::json;

inline json shape(const json& j) {
  switch (j.type()) {
    case json::value_t::object: {
      json out = json::object();
      for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = shape(it.value());
      return out;
    }
    case json::value_t::array: {
      json out = json::array();
      if (!j.empty()) out.push_back(shape(j.front()));
      return out;
    }
    case json::value_t::string: return "string";
    case json::value_t::boolean: return "boolean";
    case json::value_t::null: return "null";
    case json::value_t::number_integer:
    case json::value_t::number_unsigned: return "integer";
    case json::value_t::number_float: return "number";
    default: return "other";
  }
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Compares the shape of `doc` with the golden file `name`; rewrites the
// golden file instead when MAHLER_UPDATE_GOLDEN is set.
inline void check_golden_shape(const std::string& name, const json& doc) {
  const std::string path = std::string(MAHLER_GOLDEN_DIR) + "/" + name + ".shape.json";
  const std::string actual = mahler::io::dump(shape(doc));
  if (std::getenv("MAHLER_UPDATE_GOLDEN") != nullptr) {
    mahler::io::write_file(path, actual);
    return;
  }
  const std::string expected = read_text(path);
  REQUIRE_MESSAGE(!expected.empty(), "missing golden file " << path);
  CHECK(actual == expected);
}

}  // namespace testing_json
