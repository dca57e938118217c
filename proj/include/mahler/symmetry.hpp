#pragma once

#include <string_view>
#include <vector>

#include "mahler/geometry.hpp"

namespace mahler {

/// A rotation of the regular tetrahedron conv{(1,1,-1),(1,-1,1),(-1,1,1),(-1,-1,-1)},
/// stored as a signed permutation matrix.
struct GroupElement {
  Mat matrix;
  Vec apply(const Vec& x) const { return matrix * x; }
};

enum class SymmetryClass { Tetrahedron, Octahedron, Other };
std::string_view to_string(SymmetryClass c);

/// The 12 rotations: identity, the three half-turns diag(1,-1,-1) etc., and
/// the eight products of an even sign change with a cyclic coordinate shift.
const std::vector<GroupElement>& tetrahedral_group();

/// (x, y, z) -> (y, z, x)
GroupElement cyclic_rotation();

/// Vertex sets of gK and K agree for every g, matched by a greedy
/// nearest-neighbour bijection with threshold tol * extent.
bool is_tetrahedrally_symmetric(const Polytope& k, double tol);

/// Hull of the union of group orbits of the generators.
Polytope symmetrize_orbit(const std::vector<Vec>& generators);

/// All distinct images g p, in group order.
std::vector<Vec> orbit(const Vec& p, double tol);

/// Classification of tetrahedrally symmetric polyhedra with at most six
/// vertices (tetrahedron or octahedron); larger vertex sets are Other.
/// Throws NotSymmetric if the body is not symmetric and InvariantViolation
/// for a symmetric configuration with <= 6 vertices of neither type.
SymmetryClass classify_low_vertex_symmetric(const Polytope& k);

/// Partition of V into orbits of the cyclic group generated by g.
/// Throws NotClosed if g does not map V onto itself within tol.
std::vector<std::vector<Vec>> orbit_decomposition(const std::vector<Vec>& v, const GroupElement& g,
                                                  double tol);

}  // namespace mahler
