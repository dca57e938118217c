#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mahler/certificates.hpp"
#include "mahler/geometry.hpp"
#include "mahler/search.hpp"

namespace mahler::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Malformed or unreadable body file.
class BodyFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<std::uint64_t> seed;
  double tol_geom = 0.0;
  double tol_cert = 0.0;
  std::string output;
  std::string version = kToolVersion;
};

json to_json(const RunManifest& m);
json to_json(const Vec& v, int dim);
json to_json(const Inequality& q);
json to_json(const Polytope& body);  // {"dim", "vertices"}
json to_json(const Certificate2D& c);
json to_json(const Certificate3D& c);
json to_json(const SearchReport& r);

/// {"dim": 2|3, "vertices": [[x, y(, z)], ...]}; the hull is taken on load.
/// Throws BodyFileError for malformed input, GeometryError for degenerate bodies.
Polytope parse_body(const json& j);
Polytope load_body(const std::string& path);
void save_body(const std::string& path, const Polytope& body);

/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);
void write_file(const std::string& path, const std::string& text);

}  // namespace mahler::io
