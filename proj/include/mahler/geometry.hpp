#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mahler/errors.hpp"

namespace mahler {

/// Points live in R^3; planar bodies keep z = 0 and only use (x, y).
using Vec = Eigen::Vector3d;
/// Linear maps. For planar bodies only the top-left 2x2 block is used.
using Mat = Eigen::Matrix3d;

inline Vec vec2(double x, double y) { return Vec(x, y, 0.0); }
inline Vec vec3(double x, double y, double z) { return Vec(x, y, z); }

/// Planar linear map [[a, b], [c, d]] embedded in a 3x3 matrix.
Mat linear2(double a, double b, double c, double d);

struct Tolerances {
  double geom = 1e-9;  // hulls, dedup, membership
  double cert = 1e-7;  // certificate inequalities
};

/// Process-wide tolerances. Set once at startup (the CLI does this from
/// --tol-geom / --tol-cert); everything else only reads them.
const Tolerances& tolerances();
void set_tolerances(const Tolerances& tol);

/// {x : <normal, x> <= offset}. Normals produced by the library are unit
/// length; user-supplied ones need only be nonzero.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

/// Full-dimensional convex polytope in dimension 2 or 3.
///
/// Only constructible through convex_hull (and the operations built on it),
/// so every instance holds exactly its extreme points in canonical order
/// (2D: counterclockwise from the lexicographic minimum; 3D: lexicographic)
/// together with its facets and volume, all computed eagerly. Instances are
/// immutable and safe to share across threads.
class Polytope {
 public:
  int dim() const { return dim_; }
  std::span<const Vec> vertices() const { return vertices_; }
  std::span<const Halfspace> facets() const { return facets_; }
  /// Indices into vertices() for each facet, counterclockwise seen from outside.
  const std::vector<std::vector<int>>& facet_vertices() const { return facet_vertices_; }
  double volume() const { return volume_; }
  /// Diameter of the axis-aligned bounding box.
  double extent() const { return extent_; }
  Vec centroid_of_vertices() const;

  friend Polytope convex_hull(std::span<const Vec> points, int dim);

 private:
  Polytope() = default;

  int dim_ = 0;
  std::vector<Vec> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<std::vector<int>> facet_vertices_;
  double volume_ = 0.0;
  double extent_ = 0.0;
};

/// Convex hull of a point set. Throws DegenerateInput when the points do
/// not span the ambient dimension.
Polytope convex_hull(std::span<const Vec> points, int dim);
Polytope convex_hull(std::initializer_list<Vec> points, int dim);

double volume(const Polytope& p);

std::vector<Halfspace> vertex_to_halfspace(const Polytope& p);

/// Bounded, full-dimensional intersection of halfspaces.
/// Throws UnboundedRegion, EmptyRegion or DegenerateInput.
Polytope halfspace_to_vertex(std::span<const Halfspace> hs, int dim);
/// Same, with a point known to lie strictly inside the intersection.
Polytope halfspace_to_vertex(std::span<const Halfspace> hs, int dim, const Vec& interior);

double support_value(const Polytope& p, const Vec& u);
/// First vertex in canonical order attaining the support value.
Vec support_point(const Polytope& p, const Vec& u);

/// Minkowski functional; requires the origin strictly inside p.
double gauge(const Polytope& p, const Vec& x);
bool contains(const Polytope& p, const Vec& x, double tol);
/// True when every facet offset is positive, i.e. 0 is an interior point.
bool origin_interior(const Polytope& p, double tol);

Polytope apply_linear(const Polytope& p, const Mat& m);
Polytope translate(const Polytope& p, const Vec& t);
Polytope scale(const Polytope& p, double s);

/// Determinant of the map restricted to the body's dimension.
double det_in_dim(const Mat& m, int dim);

/// Same vertex set within tol (vertices are compared in canonical order).
bool same_vertices(const Polytope& a, const Polytope& b, double tol);

namespace detail {

/// Merge points closer than tol; keeps the first representative in input order.
std::vector<Vec> dedup_points(std::span<const Vec> pts, double tol);

struct Hull2 {
  std::vector<Vec> ccw;  // counterclockwise, starting at lexicographic minimum
};
/// Monotone chain on (x, y). Collinear points are dropped.
Hull2 monotone_chain(std::span<const Vec> pts, double eps);

struct Hull3 {
  std::vector<Vec> vertices;
  std::vector<Halfspace> facets;
  std::vector<std::vector<int>> facet_vertices;
  double volume = 0.0;
};
Hull3 quickhull(std::span<const Vec> pts, double eps);

double polygon_area(std::span<const Vec> ccw);

}  // namespace detail

}  // namespace mahler
