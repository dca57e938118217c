#include "mahler/symmetry.hpp"

#include <cmath>
#include <limits>

namespace mahler {

std::string_view to_string(SymmetryClass c) {
  switch (c) {
    case SymmetryClass::Tetrahedron: return "Tetrahedron";
    case SymmetryClass::Octahedron: return "Octahedron";
    case SymmetryClass::Other: return "Other";
  }
  return "Other";
}

const std::vector<GroupElement>& tetrahedral_group() {
  static const std::vector<GroupElement> group = [] {
    std::vector<GroupElement> g;
    const Vec signs[4] = {Vec(1, 1, 1), Vec(1, -1, -1), Vec(-1, 1, -1), Vec(-1, -1, 1)};
    Mat shift;  // (x,y,z) -> (y,z,x)
    shift << 0, 1, 0, 0, 0, 1, 1, 0, 0;
    Mat power = Mat::Identity();
    for (int k = 0; k < 3; ++k) {
      for (const auto& s : signs) g.push_back({s.asDiagonal() * power});
      power = shift * power;
    }
    return g;
  }();
  return group;
}

GroupElement cyclic_rotation() {
  Mat m;
  m << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  return {m};
}

namespace {

// Greedy nearest-neighbour bijection between two equally sized point sets.
bool match_sets(const std::vector<Vec>& a, std::span<const Vec> b, double thresh) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (const auto& p : a) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      double d = (b[j] - p).norm();
      if (d < bd) {
        bd = d;
        best = static_cast<int>(j);
      }
    }
    if (best < 0 || bd > thresh) return false;
    used[best] = 1;
  }
  return true;
}

int find_point(const std::vector<Vec>& v, const Vec& p, double tol) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if ((v[i] - p).norm() <= tol) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

bool is_tetrahedrally_symmetric(const Polytope& k, double tol) {
  if (k.dim() != 3) return false;
  const double thresh = tol * std::max(1.0, k.extent());
  std::vector<Vec> image;
  for (const auto& g : tetrahedral_group()) {
    image.clear();
    for (const auto& v : k.vertices()) image.push_back(g.apply(v));
    if (!match_sets(image, k.vertices(), thresh)) return false;
  }
  return true;
}

std::vector<Vec> orbit(const Vec& p, double tol) {
  std::vector<Vec> out;
  for (const auto& g : tetrahedral_group()) {
    Vec q = g.apply(p);
    if (find_point(out, q, tol) < 0) out.push_back(q);
  }
  return out;
}

Polytope symmetrize_orbit(const std::vector<Vec>& generators) {
  if (generators.empty()) throw GeometryError(ErrorKind::DegenerateInput, "no generators");
  std::vector<Vec> pts;
  for (const auto& p : generators) {
    for (const auto& g : tetrahedral_group()) pts.push_back(g.apply(p));
  }
  return convex_hull(pts, 3);
}

SymmetryClass classify_low_vertex_symmetric(const Polytope& k) {
  const double tol = tolerances().geom;
  if (!is_tetrahedrally_symmetric(k, std::max(tol, 1e-9))) {
    throw GeometryError(ErrorKind::NotSymmetric, "body is not tetrahedrally symmetric");
  }
  const auto v = k.vertices();
  if (v.size() > 6) return SymmetryClass::Other;
  const double thresh = 1e-7 * std::max(1.0, k.extent());
  if (v.size() == 4) {
    // Every vertex is (±p, ±p, ±p) with a common |p|.
    const double p = std::abs(v[0].x());
    bool ok = p > thresh;
    for (const auto& x : v) {
      for (int c = 0; c < 3; ++c) ok = ok && std::abs(std::abs(x[c]) - p) <= thresh;
    }
    if (ok) return SymmetryClass::Tetrahedron;
  }
  if (v.size() == 6) {
    // {±p e_i}: exactly one nonzero coordinate per vertex, common magnitude.
    double p = v[0].cwiseAbs().maxCoeff();
    bool ok = p > thresh;
    for (const auto& x : v) {
      int nonzero = 0;
      for (int c = 0; c < 3; ++c) {
        if (std::abs(x[c]) > thresh) {
          ++nonzero;
          ok = ok && std::abs(std::abs(x[c]) - p) <= thresh;
        }
      }
      ok = ok && nonzero == 1;
    }
    if (ok) return SymmetryClass::Octahedron;
  }
  throw GeometryError(ErrorKind::InvariantViolation,
                      "symmetric polyhedron with " + std::to_string(v.size()) +
                          " vertices is neither a tetrahedron nor an octahedron");
}

std::vector<std::vector<Vec>> orbit_decomposition(const std::vector<Vec>& v, const GroupElement& g,
                                                  double tol) {
  std::vector<int> next(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    int j = find_point(v, g.apply(v[i]), tol);
    if (j < 0) throw GeometryError(ErrorKind::NotClosed, "point set is not closed under g");
    next[i] = j;
  }
  std::vector<char> seen(v.size(), 0);
  std::vector<std::vector<Vec>> orbits;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (seen[i]) continue;
    std::vector<Vec> orb;
    int j = static_cast<int>(i);
    while (!seen[j]) {
      seen[j] = 1;
      orb.push_back(v[j]);
      j = next[j];
    }
    if (j != static_cast<int>(i)) {
      throw GeometryError(ErrorKind::NotClosed, "g does not act as a permutation");
    }
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

}  // namespace mahler
