// Quickhull in R^3 with a distance tolerance, followed by a facet
// reconstruction pass that merges coplanar triangles into polygons and
// drops points that sit on edges or inside facets.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "mahler/geometry.hpp"

namespace mahler::detail {
namespace {

struct Face {
  std::array<int, 3> v{};
  std::array<int, 3> nb{-1, -1, -1};  // neighbour across edge (v[k], v[k+1])
  Vec n = Vec::Zero();
  double off = 0.0;
  double area = 0.0;
  std::vector<int> outside;
  bool alive = true;
};

struct HorizonEdge {
  int a, b, outer;
};

class QuickHull {
 public:
  QuickHull(std::span<const Vec> pts, double eps) : p_(pts), eps_(eps) {}

  // Returns false when the incremental structure became inconsistent.
  bool run();
  bool flat() const { return flat_; }
  const std::vector<Face>& faces() const { return faces_; }

 private:
  double dist(const Face& f, int i) const { return f.n.dot(p_[i]) - f.off; }
  int add_face(int a, int b, int c, const Vec& fallback_normal);
  bool initial_simplex();
  bool flat_ = false;
  void assign(const std::vector<int>& pts, std::span<const int> candidates);
  int pick_apex(const Face& f) const;
  bool add_point(int face_id);

  std::span<const Vec> p_;
  double eps_;
  std::vector<Face> faces_;
  std::vector<int> visit_;
  int stamp_ = 0;
};

int QuickHull::add_face(int a, int b, int c, const Vec& fallback_normal) {
  Face f;
  f.v = {a, b, c};
  Vec n = (p_[b] - p_[a]).cross(p_[c] - p_[a]);
  double len = n.norm();
  f.area = 0.5 * len;
  if (len > eps_ * eps_) {
    f.n = n / len;
  } else {
    f.n = fallback_normal;
  }
  f.off = f.n.dot(p_[a]);
  faces_.push_back(std::move(f));
  visit_.push_back(0);
  return static_cast<int>(faces_.size()) - 1;
}

bool QuickHull::initial_simplex() {
  const int n = static_cast<int>(p_.size());
  if (n < 4) return false;
  // Pair of extreme points along the axis with the largest spread.
  int best_axis = 0;
  double best_spread = -1.0;
  std::array<int, 3> lo{}, hi{};
  for (int ax = 0; ax < 3; ++ax) {
    for (int i = 0; i < n; ++i) {
      if (p_[i][ax] < p_[lo[ax]][ax]) lo[ax] = i;
      if (p_[i][ax] > p_[hi[ax]][ax]) hi[ax] = i;
    }
    double s = p_[hi[ax]][ax] - p_[lo[ax]][ax];
    if (s > best_spread) {
      best_spread = s;
      best_axis = ax;
    }
  }
  int i0 = lo[best_axis], i1 = hi[best_axis];
  if (best_spread <= eps_) return false;

  Vec dir = (p_[i1] - p_[i0]).normalized();
  int i2 = -1;
  double best = eps_;
  for (int i = 0; i < n; ++i) {
    Vec d = p_[i] - p_[i0];
    double r = (d - d.dot(dir) * dir).norm();
    if (r > best) {
      best = r;
      i2 = i;
    }
  }
  if (i2 < 0) return false;

  Vec pn = (p_[i1] - p_[i0]).cross(p_[i2] - p_[i0]).normalized();
  int i3 = -1;
  best = eps_;
  for (int i = 0; i < n; ++i) {
    double h = std::abs(pn.dot(p_[i] - p_[i0]));
    if (h > best) {
      best = h;
      i3 = i;
    }
  }
  if (i3 < 0) return false;

  if (pn.dot(p_[i3] - p_[i0]) > 0) std::swap(i1, i2);  // i3 must lie behind (i0,i1,i2)
  // Faces oriented counterclockwise seen from outside.
  int f0 = add_face(i0, i1, i2, Vec::UnitZ());
  int f1 = add_face(i0, i3, i1, Vec::UnitZ());
  int f2 = add_face(i1, i3, i2, Vec::UnitZ());
  int f3 = add_face(i2, i3, i0, Vec::UnitZ());
  faces_[f0].nb = {f1, f2, f3};
  faces_[f1].nb = {f3, f2, f0};
  faces_[f2].nb = {f1, f3, f0};
  faces_[f3].nb = {f2, f1, f0};

  std::vector<int> rest;
  rest.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (i != i0 && i != i1 && i != i2 && i != i3) rest.push_back(i);
  }
  std::array<int, 4> all{f0, f1, f2, f3};
  assign(rest, all);
  return true;
}

void QuickHull::assign(const std::vector<int>& pts, std::span<const int> candidates) {
  for (int i : pts) {
    int best_f = -1;
    double best_d = eps_;
    for (int f : candidates) {
      double d = dist(faces_[f], i);
      if (d > best_d) {
        best_d = d;
        best_f = f;
      }
    }
    if (best_f >= 0) faces_[best_f].outside.push_back(i);
  }
}

int QuickHull::pick_apex(const Face& f) const {
  Vec fc = (p_[f.v[0]] + p_[f.v[1]] + p_[f.v[2]]) / 3.0;
  int apex = -1;
  double best_d = -std::numeric_limits<double>::infinity();
  double best_r = -1.0;
  for (int i : f.outside) {
    double d = dist(f, i);
    double r = (p_[i] - fc).squaredNorm();
    // Ties go to the point farthest from the face centre, which cannot be
    // the midpoint of two other tied points.
    if (d > best_d + eps_ || (std::abs(d - best_d) <= eps_ && r > best_r)) {
      best_d = d;
      best_r = r;
      apex = i;
    }
  }
  return apex;
}

bool QuickHull::add_point(int face_id) {
  const int apex = pick_apex(faces_[face_id]);
  ++stamp_;
  std::vector<int> visible{face_id};
  visit_[face_id] = stamp_;
  std::vector<HorizonEdge> horizon;
  for (std::size_t k = 0; k < visible.size(); ++k) {
    const Face& f = faces_[visible[k]];
    for (int e = 0; e < 3; ++e) {
      int g = f.nb[e];
      if (g < 0) return false;
      if (visit_[g] == stamp_) continue;
      if (dist(faces_[g], apex) > eps_) {
        visit_[g] = stamp_;
        visible.push_back(g);
      }
    }
  }
  for (int fid : visible) {
    const Face& f = faces_[fid];
    for (int e = 0; e < 3; ++e) {
      int g = f.nb[e];
      if (visit_[g] != stamp_) horizon.push_back({f.v[e], f.v[(e + 1) % 3], g});
    }
  }
  if (horizon.size() < 3) return false;

  std::vector<int> orphans;
  for (int fid : visible) {
    Face& f = faces_[fid];
    f.alive = false;
    for (int i : f.outside) {
      if (i != apex) orphans.push_back(i);
    }
    f.outside.clear();
    f.outside.shrink_to_fit();
  }

  std::unordered_map<int, int> by_start, by_end;
  std::vector<int> created;
  created.reserve(horizon.size());
  for (const auto& h : horizon) {
    int nf = add_face(h.a, h.b, apex, faces_[h.outer].n);
    if (!by_start.emplace(h.a, nf).second) return false;
    if (!by_end.emplace(h.b, nf).second) return false;
    created.push_back(nf);
  }
  for (std::size_t k = 0; k < horizon.size(); ++k) {
    const auto& h = horizon[k];
    Face& f = faces_[created[k]];
    auto s = by_start.find(h.b);
    auto t = by_end.find(h.a);
    if (s == by_start.end() || t == by_end.end()) return false;
    f.nb = {h.outer, s->second, t->second};
    Face& outer = faces_[h.outer];
    bool linked = false;
    for (int e = 0; e < 3; ++e) {
      if (outer.v[e] == h.b && outer.v[(e + 1) % 3] == h.a) {
        outer.nb[e] = created[k];
        linked = true;
      }
    }
    if (!linked) return false;
  }
  assign(orphans, created);
  return true;
}

bool QuickHull::run() {
  if (!initial_simplex()) {
    flat_ = true;
    return false;
  }
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    if (!faces_[f].alive || faces_[f].outside.empty()) continue;
    if (!add_point(static_cast<int>(f))) return false;
    if (faces_.size() > 64 * p_.size() + 1024) return false;
  }
  return true;
}

// Orthonormal pair spanning the plane orthogonal to n.
std::pair<Vec, Vec> plane_basis(const Vec& n) {
  Vec a = std::abs(n.x()) < 0.9 ? Vec::UnitX() : Vec::UnitY();
  Vec e1 = n.cross(a).normalized();
  Vec e2 = n.cross(e1);
  return {e1, e2};
}

struct Plane {
  Vec n;
  double off;
  std::vector<int> members;  // candidate vertex ids
};

Hull3 rebuild(std::span<const Vec> pts, const std::vector<Face>& faces, double eps) {
  std::vector<int> order;
  std::vector<char> used(pts.size(), 0);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (!faces[f].alive) continue;
    order.push_back(static_cast<int>(f));
    for (int v : faces[f].v) used[v] = 1;
  }
  std::vector<int> cand;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) cand.push_back(static_cast<int>(i));
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return faces[a].area > faces[b].area; });

  // Cluster triangles whose corners lie on an existing plane.
  std::vector<Plane> planes;
  for (int fid : order) {
    const Face& f = faces[fid];
    if (f.area <= eps * eps) continue;
    bool merged = false;
    for (auto& pl : planes) {
      if (pl.n.dot(f.n) < 0.5) continue;
      bool on = true;
      for (int v : f.v) {
        if (std::abs(pl.n.dot(pts[v]) - pl.off) > eps) {
          on = false;
          break;
        }
      }
      if (on) {
        merged = true;
        break;
      }
    }
    if (!merged) planes.push_back({f.n, f.n.dot(pts[f.v[0]]), {}});
  }

  Vec c = Vec::Zero();
  for (int i : cand) c += pts[i];
  c /= static_cast<double>(cand.size());

  struct Poly {
    Vec n;
    double off;
    std::vector<int> corners;  // indices into pts, ccw seen from outside
    double area;
  };
  std::vector<Poly> polys;
  for (auto& pl : planes) {
    double off = -std::numeric_limits<double>::infinity();
    for (int i : cand) off = std::max(off, pl.n.dot(pts[i]));
    std::vector<int> on;
    for (int i : cand) {
      if (pl.n.dot(pts[i]) >= off - eps) on.push_back(i);
    }
    if (on.size() < 3) continue;
    auto [e1, e2] = plane_basis(pl.n);
    std::vector<Vec> flat;
    flat.reserve(on.size());
    for (int i : on) flat.emplace_back(e1.dot(pts[i]), e2.dot(pts[i]), static_cast<double>(i));
    Hull2 h = monotone_chain(flat, eps);
    if (h.ccw.size() < 3) continue;
    double area = polygon_area(h.ccw);
    if (area <= eps * eps) continue;
    Poly poly{pl.n, off, {}, area};
    for (const auto& q : h.ccw) poly.corners.push_back(static_cast<int>(q.z()));
    // Rotate so the smallest index leads; used for duplicate detection.
    auto it = std::min_element(poly.corners.begin(), poly.corners.end());
    std::rotate(poly.corners.begin(), it, poly.corners.end());
    bool dup = false;
    for (const auto& other : polys) {
      if (other.corners == poly.corners) {
        dup = true;
        break;
      }
    }
    if (!dup) polys.push_back(std::move(poly));
  }

  Hull3 out;
  std::vector<int> keep;
  std::vector<char> corner(pts.size(), 0);
  for (const auto& poly : polys) {
    for (int i : poly.corners) corner[i] = 1;
  }
  for (int i : cand) {
    if (corner[i]) keep.push_back(i);
  }
  std::sort(keep.begin(), keep.end(), [&](int a, int b) {
    const Vec& x = pts[a];
    const Vec& y = pts[b];
    return std::lexicographical_compare(x.data(), x.data() + 3, y.data(), y.data() + 3);
  });
  std::vector<int> remap(pts.size(), -1);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    remap[keep[k]] = static_cast<int>(k);
    out.vertices.push_back(pts[keep[k]]);
  }

  std::sort(polys.begin(), polys.end(), [](const Poly& a, const Poly& b) {
    return std::lexicographical_compare(a.n.data(), a.n.data() + 3, b.n.data(), b.n.data() + 3);
  });
  double vol = 0.0;
  for (const auto& poly : polys) {
    out.facets.push_back({poly.n, poly.off});
    std::vector<int> ids;
    for (int i : poly.corners) ids.push_back(remap[i]);
    out.facet_vertices.push_back(std::move(ids));
    vol += (poly.off - poly.n.dot(c)) * poly.area / 3.0;
  }
  out.volume = vol;
  return out;
}

// Facet areas times normals must sum to zero for a closed surface.
bool closed_surface(const Hull3& h, std::span<const Vec> pts, double eps) {
  if (h.facets.size() < 4) return false;
  Vec sum = Vec::Zero();
  double total = 0.0;
  for (std::size_t f = 0; f < h.facets.size(); ++f) {
    const auto& ids = h.facet_vertices[f];
    Vec an = Vec::Zero();
    for (std::size_t k = 0; k < ids.size(); ++k) {
      an += h.vertices[ids[k]].cross(h.vertices[ids[(k + 1) % ids.size()]]);
    }
    sum += 0.5 * an;
    total += 0.5 * an.norm();
  }
  if (sum.norm() > 1e-7 * total) return false;
  // Every input point must satisfy every facet.
  for (const auto& f : h.facets) {
    for (const auto& q : pts) {
      if (f.normal.dot(q) - f.offset > 16 * eps) return false;
    }
  }
  return true;
}

}  // namespace

Hull3 quickhull(std::span<const Vec> pts, double eps) {
  {
    QuickHull qh(pts, eps);
    const bool ok = qh.run();
    if (qh.flat()) throw GeometryError(ErrorKind::DegenerateInput, "points are coplanar");
    if (ok) {
      Hull3 h = rebuild(pts, qh.faces(), eps);
      if (closed_surface(h, pts, eps)) return h;
    }
  }
  // Retry on a slightly perturbed copy; the perturbation only influences
  // which points become candidates, geometry is rebuilt from the originals.
  std::uint64_t state = 0x9E3779B97F4A7C15ull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
  };
  for (double amp : {1e-3, 1e-1, 10.0}) {
    std::vector<Vec> jittered(pts.begin(), pts.end());
    for (auto& q : jittered) q += amp * eps * Vec(next(), next(), next());
    QuickHull qh(jittered, eps * 0.5);
    if (!qh.run()) continue;
    Hull3 h = rebuild(pts, qh.faces(), eps);
    if (closed_surface(h, pts, eps)) return h;
  }
  throw GeometryError(ErrorKind::HullFailure, "3D hull did not produce a closed surface");
}

}  // namespace mahler::detail
