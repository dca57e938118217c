#include "mahler/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mahler {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::UnboundedRegion: return "UnboundedRegion";
    case ErrorKind::EmptyRegion: return "EmptyRegion";
    case ErrorKind::ZeroDirection: return "ZeroDirection";
    case ErrorKind::OriginNotInterior: return "OriginNotInterior";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotCentrallySymmetric: return "NotCentrallySymmetric";
    case ErrorKind::NotOnBoundary: return "NotOnBoundary";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SymmetryViolation: return "SymmetryViolation";
    case ErrorKind::CertificateInvalid: return "CertificateInvalid";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::HullFailure: return "HullFailure";
  }
  return "Unknown";
}

namespace {

Tolerances g_tolerances;

double bbox_diameter(std::span<const Vec> pts) {
  if (pts.empty()) return 0.0;
  Vec lo = pts[0], hi = pts[0];
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

// Hull tolerance: tol_geom, relative to the size of the input.
double hull_eps(std::span<const Vec> pts) {
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  return tolerances().geom * std::max(1.0, std::max(scale, bbox_diameter(pts)));
}

}  // namespace

const Tolerances& tolerances() { return g_tolerances; }
void set_tolerances(const Tolerances& tol) { g_tolerances = tol; }

Mat linear2(double a, double b, double c, double d) {
  Mat m = Mat::Identity();
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

Vec Polytope::centroid_of_vertices() const {
  Vec c = Vec::Zero();
  for (const auto& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

namespace detail {

std::vector<Vec> dedup_points(std::span<const Vec> pts, double tol) {
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return pts[a].x() < pts[b].x(); });
  std::vector<char> dropped(pts.size(), 0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    int i = order[k];
    if (dropped[i]) continue;
    for (std::size_t j = k + 1; j < order.size(); ++j) {
      int m = order[j];
      if (pts[m].x() - pts[i].x() > tol) break;
      if (!dropped[m] && (pts[m] - pts[i]).norm() <= tol) dropped[m] = 1;
    }
  }
  std::vector<Vec> out;
  out.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!dropped[i]) out.push_back(pts[i]);
  }
  return out;
}

Hull2 monotone_chain(std::span<const Vec> pts, double eps) {
  std::vector<Vec> p(pts.begin(), pts.end());
  std::sort(p.begin(), p.end(), [](const Vec& a, const Vec& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  auto cross = [](const Vec& o, const Vec& a, const Vec& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  Hull2 h;
  if (p.size() < 3) {
    h.ccw = p;
    return h;
  }
  std::vector<Vec> out(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(out[k - 2], out[k - 1], p[i]) <= 0) --k;
    out[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(out[k - 2], out[k - 1], p[i]) <= 0) --k;
    out[k++] = p[i];
  }
  out.resize(k > 0 ? k - 1 : 0);

  // Drop vertices within eps of the chord joining their neighbours.
  for (bool changed = true; changed && out.size() > 3;) {
    changed = false;
    for (std::size_t i = 0; i < out.size() && out.size() > 3; ++i) {
      const Vec& a = out[(i + out.size() - 1) % out.size()];
      const Vec& b = out[(i + 1) % out.size()];
      const double len = std::hypot(b.x() - a.x(), b.y() - a.y());
      if (cross(a, out[i], b) <= eps * std::max(len, eps)) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  // Restart at the lexicographic minimum.
  auto first = std::min_element(out.begin(), out.end(), [](const Vec& a, const Vec& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  std::rotate(out.begin(), first, out.end());
  h.ccw = std::move(out);
  return h;
}

double polygon_area(std::span<const Vec> ccw) {
  double a = 0.0;
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const Vec& p = ccw[i];
    const Vec& q = ccw[(i + 1) % ccw.size()];
    a += p.x() * q.y() - p.y() * q.x();
  }
  return 0.5 * a;
}

}  // namespace detail

Polytope convex_hull(std::span<const Vec> points, int dim) {
  if (dim != 2 && dim != 3) {
    throw GeometryError(ErrorKind::DegenerateInput, "dimension must be 2 or 3");
  }
  if (points.size() < static_cast<std::size_t>(dim + 1)) {
    throw GeometryError(ErrorKind::DegenerateInput, "need at least dim+1 points");
  }
  for (const auto& p : points) {
    if (!p.allFinite()) throw GeometryError(ErrorKind::DegenerateInput, "non-finite coordinate");
  }
  std::vector<Vec> flat(points.begin(), points.end());
  if (dim == 2) {
    for (auto& p : flat) p.z() = 0.0;
  }
  const double eps = hull_eps(flat);
  const double merge = tolerances().geom * (1.0 + bbox_diameter(flat));
  std::vector<Vec> pts = detail::dedup_points(flat, merge);

  Polytope out;
  out.dim_ = dim;
  if (dim == 2) {
    auto h = detail::monotone_chain(pts, eps);
    if (h.ccw.size() < 3) throw GeometryError(ErrorKind::DegenerateInput, "points are collinear");
    double area = detail::polygon_area(h.ccw);
    if (area <= eps * eps) throw GeometryError(ErrorKind::DegenerateInput, "zero area");
    out.vertices_ = std::move(h.ccw);
    const std::size_t n = out.vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec& a = out.vertices_[i];
      const Vec& b = out.vertices_[(i + 1) % n];
      Vec nrm(b.y() - a.y(), a.x() - b.x(), 0.0);
      nrm.normalize();
      out.facets_.push_back({nrm, nrm.dot(a)});
      out.facet_vertices_.push_back({static_cast<int>(i), static_cast<int>((i + 1) % n)});
    }
    out.volume_ = area;
  } else {
    if (pts.size() < 4) throw GeometryError(ErrorKind::DegenerateInput, "need 4 distinct points");
    detail::Hull3 h;
    try {
      h = detail::quickhull(pts, eps);
    } catch (const GeometryError& e) {
      if (e.kind() == ErrorKind::DegenerateInput) throw;
      throw GeometryError(ErrorKind::DegenerateInput, e.what());
    }
    if (h.volume <= eps * eps * eps || h.vertices.size() < 4) {
      throw GeometryError(ErrorKind::DegenerateInput, "points are coplanar");
    }
    out.vertices_ = std::move(h.vertices);
    out.facets_ = std::move(h.facets);
    out.facet_vertices_ = std::move(h.facet_vertices);
    out.volume_ = h.volume;
  }
  out.extent_ = bbox_diameter(out.vertices_);
  return out;
}

Polytope convex_hull(std::initializer_list<Vec> points, int dim) {
  return convex_hull(std::span<const Vec>(points.begin(), points.size()), dim);
}

double volume(const Polytope& p) { return p.volume(); }

std::vector<Halfspace> vertex_to_halfspace(const Polytope& p) {
  return {p.facets().begin(), p.facets().end()};
}

namespace {

// Unbounded iff the origin is not strictly inside the hull of the normals.
bool bounded(std::span<const Halfspace> hs, int dim) {
  std::vector<Vec> normals;
  normals.reserve(hs.size());
  for (const auto& h : hs) normals.push_back(h.normal.normalized());
  if (normals.size() < static_cast<std::size_t>(dim + 1)) return false;
  try {
    Polytope cone = convex_hull(normals, dim);
    return origin_interior(cone, 1e-12);
  } catch (const GeometryError&) {
    return false;
  }
}

// Intersection with a known interior point: polar of the hull of the
// shifted, normalized constraint normals.
Polytope dual_intersection(std::span<const Halfspace> hs, int dim, const Vec& interior) {
  std::vector<Vec> dual;
  dual.reserve(hs.size());
  for (const auto& h : hs) {
    Vec n = h.normal;
    if (dim == 2) n.z() = 0.0;
    double len = n.norm();
    double off = h.offset - n.dot(interior);
    if (len <= 1e-300) {
      if (off < 0) throw GeometryError(ErrorKind::EmptyRegion, "violated trivial constraint");
      continue;
    }
    if (off <= tolerances().geom * len) {
      throw GeometryError(ErrorKind::OriginNotInterior, "hint is not strictly interior");
    }
    dual.push_back(n / off);
  }
  Polytope d = [&] {
    try {
      return convex_hull(dual, dim);
    } catch (const GeometryError&) {
      throw GeometryError(ErrorKind::UnboundedRegion, "constraint normals do not span");
    }
  }();
  std::vector<Vec> verts;
  verts.reserve(d.facets().size());
  for (const auto& f : d.facets()) {
    if (f.offset <= 0) throw GeometryError(ErrorKind::UnboundedRegion, "intersection is unbounded");
    verts.push_back(f.normal / f.offset + interior);
  }
  return convex_hull(verts, dim);
}

// Brute-force vertex enumeration for inputs without a known interior point.
std::vector<Vec> enumerate_vertices(std::span<const Halfspace> hs, int dim, double tol) {
  std::vector<Vec> out;
  const std::size_t m = hs.size();
  auto feasible = [&](const Vec& x) {
    for (const auto& h : hs) {
      double len = h.normal.norm();
      if (h.normal.dot(x) - h.offset > tol * std::max(1.0, len)) return false;
    }
    return true;
  };
  if (dim == 2) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        Eigen::Matrix2d a;
        a << hs[i].normal.x(), hs[i].normal.y(), hs[j].normal.x(), hs[j].normal.y();
        if (std::abs(a.determinant()) < 1e-12) continue;
        Eigen::Vector2d x = a.partialPivLu().solve(Eigen::Vector2d(hs[i].offset, hs[j].offset));
        Vec p(x.x(), x.y(), 0.0);
        if (feasible(p)) out.push_back(p);
      }
    }
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        for (std::size_t k = j + 1; k < m; ++k) {
          Mat a;
          a.row(0) = hs[i].normal.transpose();
          a.row(1) = hs[j].normal.transpose();
          a.row(2) = hs[k].normal.transpose();
          if (std::abs(a.determinant()) < 1e-12) continue;
          Vec x = a.partialPivLu().solve(Vec(hs[i].offset, hs[j].offset, hs[k].offset));
          if (feasible(x)) out.push_back(x);
        }
      }
    }
  }
  return out;
}

}  // namespace

Polytope halfspace_to_vertex(std::span<const Halfspace> hs, int dim, const Vec& interior) {
  for (const auto& h : hs) {
    if (!h.normal.allFinite() || !std::isfinite(h.offset)) {
      throw GeometryError(ErrorKind::DegenerateInput, "non-finite halfspace");
    }
  }
  return dual_intersection(hs, dim, interior);
}

Polytope halfspace_to_vertex(std::span<const Halfspace> hs, int dim) {
  if (dim != 2 && dim != 3) throw GeometryError(ErrorKind::DegenerateInput, "dimension must be 2 or 3");
  for (const auto& h : hs) {
    if (h.normal.norm() == 0.0) throw GeometryError(ErrorKind::DegenerateInput, "zero normal");
  }
  bool origin_inside = true;
  for (const auto& h : hs) {
    if (h.offset <= tolerances().geom * h.normal.norm()) origin_inside = false;
  }
  if (origin_inside) return dual_intersection(hs, dim, Vec::Zero());
  if (!bounded(hs, dim)) throw GeometryError(ErrorKind::UnboundedRegion, "intersection is unbounded");
  if (hs.size() > 200) {
    throw GeometryError(ErrorKind::DegenerateInput,
                        "too many halfspaces without an interior point; pass one explicitly");
  }
  auto verts = enumerate_vertices(hs, dim, tolerances().geom);
  if (verts.empty()) throw GeometryError(ErrorKind::EmptyRegion, "no feasible vertex");
  try {
    return convex_hull(verts, dim);
  } catch (const GeometryError&) {
    throw GeometryError(ErrorKind::EmptyRegion, "intersection is not full-dimensional");
  }
}

double support_value(const Polytope& p, const Vec& u) {
  if (u.norm() == 0.0) throw GeometryError(ErrorKind::ZeroDirection, "support direction is zero");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : p.vertices()) best = std::max(best, u.dot(v));
  return best;
}

Vec support_point(const Polytope& p, const Vec& u) {
  double h = support_value(p, u);
  double tol = tolerances().geom * std::max(1.0, u.norm() * p.extent());
  for (const auto& v : p.vertices()) {
    if (u.dot(v) >= h - tol) return v;
  }
  return p.vertices().front();
}

bool origin_interior(const Polytope& p, double tol) {
  for (const auto& f : p.facets()) {
    if (f.offset <= tol) return false;
  }
  return true;
}

double gauge(const Polytope& p, const Vec& x) {
  double g = 0.0;
  const double tol = tolerances().geom * std::max(1.0, p.extent()) * 1e-3;
  for (const auto& f : p.facets()) {
    if (f.offset <= tol) {
      throw GeometryError(ErrorKind::OriginNotInterior, "gauge needs the origin in the interior");
    }
    g = std::max(g, f.normal.dot(x) / f.offset);
  }
  return g;
}

bool contains(const Polytope& p, const Vec& x, double tol) {
  for (const auto& f : p.facets()) {
    if (f.normal.dot(x) - f.offset > tol) return false;
  }
  return true;
}

double det_in_dim(const Mat& m, int dim) {
  return dim == 2 ? m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) : m.determinant();
}

Polytope apply_linear(const Polytope& p, const Mat& m) {
  Mat a = m;
  if (p.dim() == 2) {
    a.row(2).setZero();
    a.col(2).setZero();
    a(2, 2) = 1.0;
  }
  double scale = a.cwiseAbs().maxCoeff();
  if (!(std::abs(det_in_dim(a, p.dim())) > 1e-12 * std::pow(std::max(scale, 1e-300), p.dim()))) {
    throw GeometryError(ErrorKind::SingularMatrix, "linear map is singular");
  }
  std::vector<Vec> pts;
  pts.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) pts.push_back(a * v);
  return convex_hull(pts, p.dim());
}

Polytope translate(const Polytope& p, const Vec& t) {
  std::vector<Vec> pts;
  pts.reserve(p.vertices().size());
  Vec s = t;
  if (p.dim() == 2) s.z() = 0.0;
  for (const auto& v : p.vertices()) pts.push_back(v + s);
  return convex_hull(pts, p.dim());
}

Polytope scale(const Polytope& p, double s) {
  if (!(std::abs(s) > 0.0)) throw GeometryError(ErrorKind::SingularMatrix, "zero scale");
  std::vector<Vec> pts;
  pts.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) pts.push_back(s * v);
  return convex_hull(pts, p.dim());
}

bool same_vertices(const Polytope& a, const Polytope& b, double tol) {
  if (a.dim() != b.dim() || a.vertices().size() != b.vertices().size()) return false;
  // Canonical order is lexicographic in 3D and a rotation-fixed ccw walk in
  // 2D, but tiny perturbations can reorder near-ties; match by nearest point.
  std::vector<char> used(b.vertices().size(), 0);
  for (const auto& v : a.vertices()) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.vertices().size(); ++j) {
      if (used[j]) continue;
      double d = (b.vertices()[j] - v).norm();
      if (d < bd) {
        bd = d;
        best = static_cast<int>(j);
      }
    }
    if (best < 0 || bd > tol) return false;
    used[best] = 1;
  }
  return true;
}

}  // namespace mahler
