#include "mahler/io.hpp"

#include <fstream>
#include <sstream>

namespace mahler::io {

json to_json(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["inputs"] = m.inputs;
  j["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  j["tol_geom"] = m.tol_geom;
  j["tol_cert"] = m.tol_cert;
  j["output"] = m.output;
  j["version"] = m.version;
  return j;
}

json to_json(const Vec& v, int dim) {
  json a = json::array();
  for (int i = 0; i < dim; ++i) a.push_back(v[i]);
  return a;
}

json to_json(const Inequality& q) {
  return json{{"name", q.name},
              {"relation", q.relation == Inequality::Relation::Equal ? "==" : ">="},
              {"lhs", q.lhs},
              {"rhs", q.rhs},
              {"residual", q.residual},
              {"pass", q.pass}};
}

namespace {

json points_json(const std::vector<Vec>& pts, int dim) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(to_json(p, dim));
  return a;
}

json checks_json(const std::vector<Inequality>& checks) {
  json a = json::array();
  for (const auto& q : checks) a.push_back(to_json(q));
  return a;
}

json matrix2_json(const Mat& m) {
  return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
}

}  // namespace

json to_json(const Polytope& body) {
  json j;
  j["dim"] = body.dim();
  j["vertices"] = points_json({body.vertices().begin(), body.vertices().end()}, body.dim());
  return j;
}

json to_json(const Certificate2D& c) {
  json j;
  j["kind"] = "plane";
  j["valid"] = c.valid;
  j["frame"] = {{"u", to_json(c.frame.u, 2)}, {"v", to_json(c.frame.v, 2)}};
  j["transform"] = matrix2_json(c.transform);
  j["volume_k"] = c.volume_k;
  j["volume_polar"] = c.volume_polar;
  j["S1"] = c.s1;
  j["S2"] = c.s2;
  j["S3"] = c.s3;
  j["chords"] = points_json({c.chords.begin(), c.chords.end()}, 2);
  j["scaled_directions"] = points_json({c.scaled_directions.begin(), c.scaled_directions.end()}, 2);
  j["containment_residuals"] = c.containment_residuals;
  j["zang_bounds"] = c.zang_bounds;
  j["certified_bound"] = c.certified_bound;
  j["product"] = c.product;
  j["checks"] = checks_json(c.checks);
  return j;
}

json to_json(const Certificate3D& c) {
  json j;
  j["kind"] = "space";
  j["valid"] = c.valid;
  j["case"] = std::string(to_string(c.case_tag));
  j["a"] = c.a;
  j["b"] = c.b;
  j["V1"] = c.v1;
  j["V2"] = c.v2;
  j["S_hex"] = c.s_hex;
  j["S_square"] = c.s_square;
  j["volume_k"] = c.volume_k;
  j["volume_polar"] = c.volume_polar;
  j["projection_square"] = c.projection_square;
  j["projection_hexagon"] = c.projection_hexagon;
  j["blue_pieces"] = c.blue_pieces;
  j["red_pieces"] = c.red_pieces;
  json est = json::array();
  for (const auto& e : c.estimates) est.push_back({{"name", e.name}, {"value", e.value}, {"lower_bound", e.lower_bound}});
  j["estimates"] = est;
  json cases = json::array();
  for (int i = 0; i < 3; ++i) {
    cases.push_back({{"case", std::string(to_string(static_cast<CaseTag>(i)))},
                     {"applicable", c.case_applicable[i]},
                     {"bound", c.case_bounds[i]}});
  }
  j["cases"] = cases;
  j["certified_bound"] = c.certified_bound;
  j["product"] = c.product;
  j["checks"] = checks_json(c.checks);
  return j;
}

json to_json(const SearchReport& r) {
  const SearchConfig& c = r.config;
  const int dim = c.body_class.dim();
  json j;
  j["config"] = {{"class", c.body_class.name()},
                 {"restarts", c.restarts},
                 {"iters", c.max_iters},
                 {"initial_step", c.initial_step},
                 {"cooling", c.cooling},
                 {"seed", c.seed}};
  j["best_product"] = r.best_product;
  j["floor"] = r.floor;
  j["floor_margin"] = r.best_product - r.floor;
  j["min_evaluated"] = r.min_evaluated;
  j["best_restart"] = r.best_restart;
  j["best_body"] = to_json(r.best_body);
  j["best_points"] = points_json(r.best_points, dim);
  json traj = json::array();
  for (const auto& t : r.trajectory) traj.push_back(json::array({t.iteration, t.best}));
  j["trajectory"] = traj;
  json runs = json::array();
  for (const auto& s : r.restarts) {
    runs.push_back({{"index", s.index},
                    {"initial_product", s.initial_product},
                    {"best_product", s.best_product},
                    {"min_evaluated", s.min_evaluated},
                    {"accepted", s.accepted},
                    {"rejected", s.rejected},
                    {"degenerate", s.degenerate},
                    {"final_step", s.final_step}});
  }
  j["restarts"] = runs;
  return j;
}

Polytope parse_body(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("vertices")) {
    throw BodyFileError("body must be an object with \"dim\" and \"vertices\"");
  }
  if (!j["dim"].is_number_integer()) throw BodyFileError("\"dim\" must be 2 or 3");
  const int dim = j["dim"].get<int>();
  if (dim != 2 && dim != 3) throw BodyFileError("\"dim\" must be 2 or 3");
  const json& vs = j["vertices"];
  if (!vs.is_array()) throw BodyFileError("\"vertices\" must be an array");
  std::vector<Vec> pts;
  for (const auto& v : vs) {
    if (!v.is_array() || static_cast<int>(v.size()) != dim) {
      throw BodyFileError("each vertex needs exactly " + std::to_string(dim) + " coordinates");
    }
    Vec p = Vec::Zero();
    for (int i = 0; i < dim; ++i) {
      if (!v[i].is_number()) throw BodyFileError("vertex coordinates must be numbers");
      p[i] = v[i].get<double>();
    }
    pts.push_back(p);
  }
  return convex_hull(pts, dim);
}

Polytope load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BodyFileError("cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw BodyFileError(path + ": " + e.what());
  }
  return parse_body(j);
}

void save_body(const std::string& path, const Polytope& body) { write_file(path, dump(to_json(body))); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace mahler::io
