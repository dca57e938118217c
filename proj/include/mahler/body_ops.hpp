#pragma once

#include "mahler/geometry.hpp"

namespace mahler {

/// Orthonormal basis (e1, e2) of the plane orthogonal to u, with
/// (e1, e2, u/|u|) right-handed. e1 = u x a for the first coordinate axis a
/// not parallel to u.
struct PlaneBasis {
  Vec u;
  Vec e1;
  Vec e2;

  static PlaneBasis of(const Vec& u);
  /// In-plane coordinates of x (z = 0).
  Vec coords(const Vec& x) const { return vec2(e1.dot(x), e2.dot(x)); }
  /// Lift in-plane coordinates back to R^3.
  Vec lift(const Vec& c) const { return c.x() * e1 + c.y() * e2; }
};

/// K - K, hull of all pairwise vertex differences.
Polytope difference_body(const Polytope& k);

/// K° for K with the origin in its interior; throws OriginNotInterior.
Polytope polar(const Polytope& k);

/// Orthogonal projection of a 3D body onto u-perp, in basis coordinates.
Polytope project(const Polytope& k, const PlaneBasis& basis);

/// K ∩ u-perp for a 3D body containing the origin, in basis coordinates.
Polytope central_section(const Polytope& k, const PlaneBasis& basis);

/// Planar Steiner symmetrization: every chord parallel to `direction` is
/// recentred on the line through the origin orthogonal to it.
Polytope steiner_symmetrize_2d(const Polytope& p, const Vec& direction);

/// |K| |(K - K)°|.
double volume_product(const Polytope& k);

/// The reference floor (n+1)/n!: 3/2 in the plane, 2/3 in space.
double makai_floor(int dim);

/// binom(2n, n): 6 in the plane, 20 in space.
int rogers_shephard_constant(int dim);

}  // namespace mahler
