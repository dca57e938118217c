#include "mahler/body_ops.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mahler {

PlaneBasis PlaneBasis::of(const Vec& u) {
  const double len = u.norm();
  if (!(len > 0.0)) throw GeometryError(ErrorKind::ZeroDirection, "plane normal is zero");
  const Vec un = u / len;
  Vec a = Vec::UnitX();
  for (const Vec& axis : {Vec::UnitX().eval(), Vec::UnitY().eval(), Vec::UnitZ().eval()}) {
    // angle between u and the axis must exceed 1e-6
    if (un.cross(axis).norm() > std::sin(1e-6)) {
      a = axis;
      break;
    }
  }
  PlaneBasis b;
  b.u = u;
  b.e1 = u.cross(a).normalized();
  b.e2 = u.cross(b.e1).normalized();
  return b;
}

Polytope difference_body(const Polytope& k) {
  auto v = k.vertices();
  std::vector<Vec> diffs;
  diffs.reserve(v.size() * v.size());
  for (const auto& a : v) {
    for (const auto& b : v) diffs.push_back(a - b);
  }
  return convex_hull(diffs, k.dim());
}

Polytope polar(const Polytope& k) {
  // Each vertex v contributes <v, x> <= 1.
  std::vector<Halfspace> hs;
  hs.reserve(k.vertices().size());
  for (const auto& v : k.vertices()) hs.push_back({v, 1.0});
  if (!origin_interior(k, tolerances().geom * std::max(1.0, k.extent()))) {
    throw GeometryError(ErrorKind::OriginNotInterior, "polar needs the origin in the interior");
  }
  return halfspace_to_vertex(hs, k.dim(), Vec::Zero());
}

Polytope project(const Polytope& k, const PlaneBasis& basis) {
  if (k.dim() != 3) throw GeometryError(ErrorKind::DegenerateInput, "projection needs a 3D body");
  std::vector<Vec> pts;
  pts.reserve(k.vertices().size());
  for (const auto& v : k.vertices()) pts.push_back(basis.coords(v));
  return convex_hull(pts, 2);
}

Polytope central_section(const Polytope& k, const PlaneBasis& basis) {
  if (k.dim() != 3) throw GeometryError(ErrorKind::DegenerateInput, "section needs a 3D body");
  if (!origin_interior(k, tolerances().geom * std::max(1.0, k.extent()))) {
    throw GeometryError(ErrorKind::OriginNotInterior, "central section needs the origin inside");
  }
  std::vector<Halfspace> hs;
  hs.reserve(k.facets().size());
  for (const auto& f : k.facets()) {
    Vec n2 = vec2(f.normal.dot(basis.e1), f.normal.dot(basis.e2));
    // Facets parallel to the plane never bind: their offset is positive.
    if (n2.norm() <= 1e-14) continue;
    hs.push_back({n2, f.offset});
  }
  return halfspace_to_vertex(hs, 2, Vec::Zero());
}

Polytope steiner_symmetrize_2d(const Polytope& p, const Vec& direction) {
  if (p.dim() != 2) throw GeometryError(ErrorKind::DegenerateInput, "Steiner symmetrization is planar");
  Vec d = vec2(direction.x(), direction.y());
  if (!(d.norm() > 0.0)) throw GeometryError(ErrorKind::ZeroDirection, "direction is zero");
  d.normalize();
  const Vec w = vec2(-d.y(), d.x());  // the fixed line

  // In (s, t) = (<x,w>, <x,d>) coordinates chords are vertical segments.
  std::vector<double> s;
  for (const auto& v : p.vertices()) s.push_back(v.dot(w));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());

  const auto verts = p.vertices();
  const std::size_t n = verts.size();
  auto chord = [&](double at) {
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec& a = verts[i];
      const Vec& b = verts[(i + 1) % n];
      double sa = a.dot(w), sb = b.dot(w);
      double ta = a.dot(d), tb = b.dot(d);
      if (at < std::min(sa, sb) || at > std::max(sa, sb)) continue;
      if (sa == sb) {
        lo = std::min({lo, ta, tb});
        hi = std::max({hi, ta, tb});
        continue;
      }
      double lam = (at - sa) / (sb - sa);
      double t = ta + lam * (tb - ta);
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    return hi - lo;
  };

  // Chord length is piecewise linear between vertex abscissae, so the
  // symmetral is the hull of the recentred chords at those abscissae.
  std::vector<Vec> pts;
  for (double at : s) {
    double half = 0.5 * std::max(0.0, chord(at));
    pts.push_back(at * w + half * d);
    pts.push_back(at * w - half * d);
  }
  return convex_hull(pts, 2);
}

double volume_product(const Polytope& k) {
  return k.volume() * polar(difference_body(k)).volume();
}

double makai_floor(int dim) { return dim == 2 ? 1.5 : 2.0 / 3.0; }

int rogers_shephard_constant(int dim) { return dim == 2 ? 6 : 20; }

}  // namespace mahler
