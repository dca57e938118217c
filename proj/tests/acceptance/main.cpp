// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "mahler/body_ops.hpp"
#include "mahler/certificates.hpp"
#include "mahler/io.hpp"
#include "mahler/oracle.hpp"
#include "mahler/rng.hpp"
#include "mahler/search.hpp"
#include "mahler/symmetry.hpp"
#include "support/bodies.hpp"

using namespace mahler;
using namespace testing_bodies;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records a failed requirement; the first few are kept for the report.
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass || failures < 5) detail << " [" << what << "]";
    pass = false;
    ++failures;
  }
  int failures = 0;
};

std::string num(double x, int digits = 12) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

struct Named {
  std::string name;
  Polytope body;
};

std::vector<Named> plane_corpus() {
  std::vector<Named> out{{"T0", t0()}, {"SQ", square()}, {"64-gon", ngon(64)}};
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const int n = 3 + static_cast<int>(seed % 10);
    out.push_back({"polygon:" + std::to_string(n) + "/seed" + std::to_string(seed),
                   random_body(BodyClass::polygon(n), seed)});
  }
  return out;
}

std::vector<Named> space_corpus() {
  std::vector<Named> out{{"TET", tet()}, {"CUBE", cube()}, {"OCT", octahedron()}};
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const int k = 1 + static_cast<int>(seed % 3);
    out.push_back({"tetra:" + std::to_string(k) + "/seed" + std::to_string(seed),
                   random_body(BodyClass::tetra(k), seed)});
  }
  return out;
}

bool passes(const std::vector<Inequality>& checks, const std::string& name) {
  for (const auto& c : checks) {
    if (c.name == name) return c.pass;
  }
  return false;
}

OracleEstimate estimate(const Polytope& p, std::uint64_t seed) {
  const Box box = bounding_box(p);
  return p.dim() == 3 ? mc_volume(polytope_membership(p), box, 1000000, seed)
                      : mc_area_2d(polytope_membership(p), box, 1000000, seed);
}

// ---------------------------------------------------------------------------

void c1(Outcome& o) {
  const double t = volume_product(t0());
  const double s = volume_product(tet());
  o.require(std::abs(t - 1.5) <= 1e-9, "T0 " + num(t));
  o.require(std::abs(s - 2.0 / 3.0) <= 1e-9, "TET " + num(s));
  o.detail << " T0=" << num(t) << " TET=" << num(s);
}

void c2(Outcome& o) {
  struct Ref {
    std::string name;
    Polytope body;
    double exact;
  };
  const double disk = std::numbers::pi * std::numbers::pi / 4.0;
  const std::vector<Ref> refs{{"CUBE", cube(), 4.0 / 3.0},
                              {"OCT", octahedron(), 4.0 / 3.0},
                              {"SQ", square(), 2.0},
                              {"64-gon", ngon(64), 2.46541994383519}};
  std::uint64_t seed = 1000;
  for (const auto& r : refs) {
    const Polytope lp = polar(difference_body(r.body));
    const double p = r.body.volume() * lp.volume();
    o.require(std::abs(p - r.exact) <= 1e-9, r.name + " exact " + num(p));
    // |K| and |(K-K)°| estimated independently; the product's standard
    // error follows from the relative errors of the two factors.
    bool agreed = false;
    double sigmas = 0.0;
    for (int attempt = 0; attempt < 2 && !agreed; ++attempt, seed += 2) {
      const OracleEstimate ek = estimate(r.body, seed);
      const OracleEstimate el = estimate(lp, seed + 1);
      const double mc = ek.mean * el.mean;
      const double se = mc * std::hypot(ek.std_error / ek.mean, el.std_error / el.mean);
      sigmas = se > 0 ? std::abs(mc - p) / se : (mc == p ? 0.0 : INFINITY);
      agreed = sigmas <= 3.0;
    }
    o.require(agreed, r.name + " oracle " + num(sigmas, 3) + " sigma");
    o.detail << " " << r.name << "=" << num(p) << " (" << num(sigmas, 2) << "σ)";
  }
  const double ng = volume_product(ngon(64));
  o.require(std::abs(ng / disk - 1.0) < 0.01, "64-gon vs pi^2/4");
}

void c3(Outcome& o, const std::vector<Named>& corpus) {
  int valid = 0;
  double worst = INFINITY;
  for (const auto& b : corpus) {
    try {
      const Certificate2D c = certify_plane(b.body);
      const bool ok = c.certified_bound >= 1.5 - 1e-7 && c.certified_bound <= c.product + 1e-7;
      o.require(ok, b.name + " bound " + num(c.certified_bound));
      valid += ok;
      worst = std::min(worst, c.certified_bound);
    } catch (const std::exception& e) {
      o.require(false, b.name + ": " + e.what());
    }
  }
  o.detail << " valid " << valid << "/" << corpus.size() << ", min bound " << num(worst);
}

struct SpaceResults {
  std::vector<Certificate3D> certs;
};

void c4(Outcome& o, const std::vector<Named>& corpus, SpaceResults& res) {
  int valid = 0;
  std::array<int, 3> verified{}, selected{};
  double worst = INFINITY;
  for (const auto& b : corpus) {
    try {
      const Certificate3D c = certify_space(b.body);
      res.certs.push_back(c);
      const bool ok = c.certified_bound >= 2.0 / 3.0 - 1e-7 && c.certified_bound <= c.product + 1e-7;
      o.require(ok, b.name + " bound " + num(c.certified_bound));
      valid += ok;
      worst = std::min(worst, c.certified_bound);
      ++selected[static_cast<int>(c.case_tag)];
      for (int k = 0; k < 3; ++k) {
        if (c.case_applicable[k] && passes(c.checks, "case" + std::to_string(k + 1) + "_chain")) ++verified[k];
      }
    } catch (const std::exception& e) {
      o.require(false, b.name + ": " + e.what());
    }
  }
  for (int k = 0; k < 3; ++k) o.require(verified[k] > 0, "Case" + std::to_string(k + 1) + " never verified");
  o.detail << " valid " << valid << "/" << corpus.size() << ", min bound " << num(worst)
           << "; branches verified Case1/2/3 = " << verified[0] << "/" << verified[1] << "/" << verified[2]
           << "; selected = " << selected[0] << "/" << selected[1] << "/" << selected[2];
}

double rel_spread(const std::vector<double>& xs) {
  double lo = *std::min_element(xs.begin(), xs.end());
  double hi = *std::max_element(xs.begin(), xs.end());
  return (hi - lo) / std::abs(hi);
}

void c5(Outcome& o, const std::vector<Named>& corpus, const SpaceResults& res) {
  double worst_tiling = 0.0, worst_blue = 0.0, worst_red = 0.0;
  for (std::size_t i = 0; i < res.certs.size(); ++i) {
    const Certificate3D& c = res.certs[i];
    const double tiling = std::abs(c.v1 + c.v2 - c.volume_polar) / c.volume_polar;
    const double blue = rel_spread(c.blue_pieces), red = rel_spread(c.red_pieces);
    o.require(tiling <= 1e-9, corpus[i].name + " tiling " + num(tiling, 3));
    o.require(blue <= 1e-9, corpus[i].name + " blue " + num(blue, 3));
    o.require(red <= 1e-9, corpus[i].name + " red " + num(red, 3));
    worst_tiling = std::max(worst_tiling, tiling);
    worst_blue = std::max(worst_blue, blue);
    worst_red = std::max(worst_red, red);
  }
  o.require(res.certs.size() == corpus.size(), "missing certificates");
  o.detail << " worst tiling " << num(worst_tiling, 3) << ", blue spread " << num(worst_blue, 3)
           << ", red spread " << num(worst_red, 3);
}

void c6(Outcome& o, const std::vector<Named>& corpus, const SpaceResults& res) {
  const double k2 = 4.0 / (3.0 * std::numbers::sqrt3);
  const double k3 = 2.0 / (3.0 * std::numbers::sqrt3);
  std::array<double, 3> slack{INFINITY, INFINITY, INFINITY};
  for (std::size_t i = 0; i < res.certs.size(); ++i) {
    const Certificate3D& c = res.certs[i];
    // Recomputed from the raw fields rather than read from the estimates.
    const std::array<double, 3> lhs{c.volume_k * c.v1, c.volume_k * c.v2, c.volume_k * c.volume_polar};
    const std::array<double, 3> rhs{2.0 / 9.0, k2 * c.s_hex / c.s_square, k3 * c.s_square / c.s_hex};
    for (int e = 0; e < 3; ++e) {
      o.require(lhs[e] >= rhs[e] - 1e-7, corpus[i].name + " estimate " + std::to_string(e + 1));
      slack[e] = std::min(slack[e], lhs[e] - rhs[e]);
    }
  }
  o.require(res.certs.size() == corpus.size(), "missing certificates");
  o.detail << " min slack " << num(slack[0], 4) << " / " << num(slack[1], 4) << " / " << num(slack[2], 4);
}

void c7(Outcome& o, const std::vector<Named>& plane, const std::vector<Named>& space) {
  long samples = 0;
  double worst = INFINITY;
  std::uint64_t seed = 7000;
  for (const auto* corpus : {&plane, &space}) {
    for (const auto& b : *corpus) {
      const ZangSampling z = sample_zang(b.body, 1000, seed++);
      o.require(z.violations == 0 && z.worst_margin >= -1e-7, b.name + " margin " + num(z.worst_margin, 3));
      samples += z.samples;
      worst = std::min(worst, z.worst_margin);
    }
  }
  o.detail << " " << samples << " boundary points, worst margin " << num(worst, 4);
}

void c8(Outcome& o, const std::vector<Named>& corpus) {
  SplitMix64 rng(8000);
  double worst = 0.0;
  int pairs = 0;
  for (const auto& b : corpus) {
    std::vector<Vec> dirs{vec3(0, 0, 1), vec3(1, 1, 1)};
    for (int i = 0; i < 10; ++i) dirs.push_back(vec3(rng.normal(), rng.normal(), rng.normal()));
    for (const auto& u : dirs) {
      const DualityResidual d = check_section_projection_duality(b.body, u);
      const double rel = d.residual / d.area;
      o.require(rel <= 1e-9, b.name + " residual " + num(rel, 3));
      worst = std::max(worst, rel);
      ++pairs;
    }
  }
  o.detail << " " << pairs << " (body, direction) pairs, worst residual/area " << num(worst, 3);
}

void c9(Outcome& o, const std::vector<Named>& plane, const std::vector<Named>& space) {
  double worst_ratio_excess = -INFINITY, worst_chain_gap = -INFINITY;
  for (const auto* corpus : {&plane, &space}) {
    for (const auto& b : *corpus) {
      const ChainBound ch = chain_lower_bound(b.body);
      const double binom = rogers_shephard_constant(b.body.dim());
      const double product = volume_product(b.body);
      o.require(ch.rs_ratio <= binom + 1e-9, b.name + " ratio " + num(ch.rs_ratio));
      o.require(ch.value <= product + 1e-7, b.name + " chain " + num(ch.value));
      worst_ratio_excess = std::max(worst_ratio_excess, ch.rs_ratio - binom);
      worst_chain_gap = std::max(worst_chain_gap, ch.value - product);
    }
  }
  const double rt = chain_lower_bound(t0()).rs_ratio;
  const double rs = chain_lower_bound(tet()).rs_ratio;
  o.require(std::abs(rt - 6.0) <= 1e-9, "T0 ratio " + num(rt));
  o.require(std::abs(rs - 20.0) <= 1e-9, "TET ratio " + num(rs));
  o.detail << " T0 ratio " << num(rt) << ", TET ratio " << num(rs) << ", max ratio-binom "
           << num(worst_ratio_excess, 4) << ", max chain-product " << num(worst_chain_gap, 4);
}

void c10(Outcome& o) {
  const double sq = santalo_point(square()).p_value;
  const double tr = santalo_point(t0()).p_value;
  const double tt = santalo_point(tet()).p_value;
  o.require(std::abs(sq - 8.0) <= 1e-6, "SQ " + num(sq));
  o.require(std::abs(tr - 27.0 / 4.0) <= 1e-6, "T0 " + num(tr));
  o.require(std::abs(tt - 64.0 / 9.0) <= 1e-5, "TET " + num(tt));
  o.detail << " SQ=" << num(sq) << " T0=" << num(tr) << " TET=" << num(tt);
}

void c11(Outcome& o) {
  struct Run {
    BodyClass cls;
    double floor, cap;
  };
  for (const Run& r : {Run{BodyClass::polygon(8), 1.5, 1.52}, Run{BodyClass::tetra(2), 2.0 / 3.0, 0.68}}) {
    SearchConfig cfg;
    cfg.body_class = r.cls;
    cfg.restarts = 20;
    cfg.max_iters = 5000;
    cfg.seed = 7;
    const SearchReport rep = minimize_volume_product(cfg);
    o.require(rep.best_product >= r.floor - 1e-6 && rep.best_product <= r.cap,
              r.cls.name() + " best " + num(rep.best_product));
    double lowest = rep.min_evaluated;
    for (const auto& rs : rep.restarts) {
      lowest = std::min(lowest, rs.min_evaluated);
      for (const auto& t : rs.trajectory) lowest = std::min(lowest, t.best);
    }
    o.require(lowest >= r.floor - 1e-6, r.cls.name() + " evaluated " + num(lowest));
    o.detail << " " << r.cls.name() << " best=" << num(rep.best_product, 9) << " lowest evaluated=" << num(lowest, 9);
  }
}

void c12(Outcome& o) {
  int tets = 0, octs = 0, others = 0, brute = 0;
  SplitMix64 rng(12000);
  for (int i = 0; i < 20; ++i) {
    const double s = rng.uniform(0.05, 20.0) * (i % 2 ? -1.0 : 1.0);  // negative scale reflects
    const bool t = classify_low_vertex_symmetric(scale(tet(), s)) == SymmetryClass::Tetrahedron;
    const bool h = classify_low_vertex_symmetric(octahedron(std::abs(s))) == SymmetryClass::Octahedron;
    o.require(t, "tetrahedron scale " + num(s));
    o.require(h, "octahedron scale " + num(s));
    tets += t;
    octs += h;
  }
  for (int i = 0; i < 12; ++i) {
    const Polytope k = random_symmetric(rng, 1 + i % 3);
    if (k.vertices().size() <= 6) continue;
    const bool ok = classify_low_vertex_symmetric(k) == SymmetryClass::Other;
    o.require(ok, "orbit body with " + std::to_string(k.vertices().size()) + " vertices");
    others += ok;
  }
  o.require(others >= 10, "fewer than 10 orbit bodies classified Other");
  // Brute force: the class read off the orbit sizes of the hull vertices.
  for (int i = 0; i < 100; ++i) {
    std::vector<Vec> gens;
    const double s = rng.uniform(0.2, 2.0), t = rng.uniform(0.2, 2.0);
    switch (i % 4) {
      case 0: gens = random_generators(rng, 1 + i % 3); break;
      case 1: gens = {vec3(s, s, s) * (rng.uniform() < 0.5 ? 1 : -1)}; break;
      case 2: gens = {vec3(0, s, 0)}; break;
      default: gens = {vec3(s, -s, s), vec3(0, 0, t)}; break;
    }
    Polytope k = tet();
    try {
      k = symmetrize_orbit(gens);
    } catch (const GeometryError&) {
      continue;
    }
    SymmetryClass expected = SymmetryClass::Other;
    if (k.vertices().size() <= 6) {
      const auto sizes = orbit(k.vertices().front(), 1e-9).size();
      expected = sizes == 4 ? SymmetryClass::Tetrahedron : sizes == 6 ? SymmetryClass::Octahedron
                                                                      : SymmetryClass::Other;
      o.require(sizes == k.vertices().size(), "vertex set is not a single orbit");
    }
    const bool ok = classify_low_vertex_symmetric(k) == expected;
    o.require(ok, "brute force disagreement at set " + std::to_string(i));
    brute += ok;
  }
  o.require(brute == 100, "brute-force agreement " + std::to_string(brute) + "/100");
  o.detail << " Tetrahedron " << tets << "/20, Octahedron " << octs << "/20, Other " << others
           << ", brute-force agreement " << brute << "/100";
}

void c13(Outcome& o) {
  SplitMix64 rng(13000);
  double worst = 0.0;
  const std::vector<Named> named{{"T0", t0()},   {"SQ", square()},    {"64-gon", ngon(64)},
                                 {"TET", tet()}, {"CUBE", cube()},    {"OCT", octahedron()}};
  for (const auto& b : named) {
    const double base = volume_product(b.body);
    for (int i = 0; i < 50; ++i) {
      const double p = volume_product(apply_linear(b.body, random_linear(rng, b.body.dim())));
      const double rel = std::abs(p - base) / base;
      o.require(rel <= 1e-8, b.name + " rel " + num(rel, 3));
      worst = std::max(worst, rel);
    }
  }
  o.detail << " 300 maps, worst relative change " << num(worst, 3);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void c14(Outcome& o) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mahler_acceptance";
  fs::create_directories(dir);
  const std::string out = (dir / "search.json").string();
  std::vector<std::string> runs;
  for (const char* threads : {"1", "1", "4"}) {
    std::vector<std::string> args{"mahler",  "search", "--class", "polygon:8", "--restarts", "6",     "--iters",
                                  "1000",    "--seed", "7",       "--threads", threads,      "--out", out};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream sout, serr;
    const int rc = cli::run_cli(static_cast<int>(argv.size()), argv.data(), sout, serr);
    o.require(rc == 0, "search exit " + std::to_string(rc) + " " + serr.str());
    runs.push_back(read_file(out));
  }
  o.require(!runs[0].empty() && runs[0] == runs[1], "repeated search output differs");
  // The manifest echoes nothing thread-related, so the whole file must match.
  o.require(runs[0] == runs[2], "threaded search output differs");

  auto serialize = [](const OracleEstimate& e) {
    io::json j;
    j["mean"] = e.mean;
    j["std_error"] = e.std_error;
    j["n_samples"] = e.n_samples;
    j["seed"] = e.seed;
    j["hits"] = e.hits;
    return io::dump(j);
  };
  const Polytope k = tet();
  const std::string a = serialize(mc_volume(polytope_membership(k), bounding_box(k), 1000000, 14));
  const std::string b = serialize(mc_volume(polytope_membership(k), bounding_box(k), 1000000, 14));
  const std::string c = serialize(mc_volume_serial(polytope_membership(k), bounding_box(k), 1000000, 14));
  o.require(a == b && a == c, "mc_volume serialization differs");
  fs::remove_all(dir);
  o.detail << " search report " << runs[0].size() << " bytes identical across 3 runs; mc_volume identical across 3 runs";
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto plane = plane_corpus();
  const auto space = space_corpus();
  SpaceResults space_results;

  struct Criterion {
    int id;
    const char* title;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "equality constants", c1},
      {2, "reference products", c2},
      {3, "2D certification", [&](Outcome& o) { c3(o, plane); }},
      {4, "3D certification", [&](Outcome& o) { c4(o, space, space_results); }},
      {5, "partition identities", [&](Outcome& o) { c5(o, space, space_results); }},
      {6, "estimates", [&](Outcome& o) { c6(o, space, space_results); }},
      {7, "Zang sampling", [&](Outcome& o) { c7(o, plane, space); }},
      {8, "section-projection duality", [&](Outcome& o) { c8(o, space); }},
      {9, "Rogers-Shephard", [&](Outcome& o) { c9(o, plane, space); }},
      {10, "Santalo points", c10},
      {11, "optimization floors", c11},
      {12, "low-vertex classifier", c12},
      {13, "affine invariance", c13},
      {14, "determinism", c14},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(clock::now() - start).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.id << "  " << c.title << " ("
              << std::fixed << std::setprecision(1) << secs << " s)" << std::defaultfloat << ":" << o.detail.str()
              << std::endl;
  }
  std::cout << (failed == 0 ? "all 14 criteria pass" : std::to_string(failed) + " criteria fail") << std::endl;
  return failed == 0 ? 0 : 1;
}
