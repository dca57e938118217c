#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mahler/body_ops.hpp"
#include "mahler/geometry.hpp"

namespace mahler {

/// One verified relation `lhs >= rhs` (or `lhs == rhs`) with its residual
/// lhs - rhs. `pass` is decided against tol_cert.
struct Inequality {
  enum class Relation { AtLeast, Equal };

  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  bool pass = false;
  Relation relation = Relation::AtLeast;
};

/// u, v and u + v on the boundary of a centrally symmetric planar body L,
/// so that ±u, ±v, ±(u+v) is an inscribed affine regular hexagon.
struct HexagonFrame {
  Vec u;
  Vec v;
};

struct Certificate2D {
  HexagonFrame frame;
  Mat transform = Mat::Identity();  // sends u to (1,0) and v to (0,1)
  double volume_k = 0.0;            // |K| in frame coordinates
  double volume_polar = 0.0;        // |(K-K)°| in frame coordinates
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::array<Vec, 3> chords{};      // (a,1), (1,b), (c,1-c) on the boundary of K-K
  std::array<Vec, 3> scaled_directions{};  // (1,0)/2S1, (0,1)/2S2, (-1,1)/2S3
  std::array<double, 3> containment_residuals{};  // gauges of the scaled directions in K-K
  std::array<double, 3> zang_bounds{};            // 1/(4 S_i)
  double certified_bound = 0.0;
  double product = 0.0;
  std::vector<Inequality> checks;
  bool valid = false;
};

enum class CaseTag { Case1, Case2, Case3 };
std::string_view to_string(CaseTag c);

struct EstimateValue {
  std::string name;
  double value = 0.0;
  double lower_bound = 0.0;
};

struct Certificate3D {
  double a = 0.0;  // a(1,1,1) on the boundary of (K-K)°
  double b = 0.0;  // b(0,0,1) on the boundary of (K-K)°
  double v1 = 0.0;
  double v2 = 0.0;
  double s_hex = 0.0;
  double s_square = 0.0;
  double volume_k = 0.0;
  double volume_polar = 0.0;
  double projection_square = 0.0;   // |Pr_{(0,0,1)-perp} K|
  double projection_hexagon = 0.0;  // |Pr_{(1,1,1)-perp} K|
  std::vector<double> blue_pieces;
  std::vector<double> red_pieces;
  CaseTag case_tag = CaseTag::Case1;  // first applicable case
  std::array<bool, 3> case_applicable{};  // hypotheses of Case1..Case3
  std::array<double, 3> case_bounds{};    // bound of each applicable case, 0 otherwise
  std::array<EstimateValue, 3> estimates;
  double certified_bound = 0.0;
  double product = 0.0;
  std::vector<Inequality> checks;
  bool valid = false;
};

/// Name of the first failing check, or empty.
std::string first_failure(const std::vector<Inequality>& checks);

HexagonFrame inscribe_affine_hexagon(const Polytope& l);

/// Runs every step of the planar argument and records each inequality;
/// never throws CertificateInvalid (valid = false instead).
Certificate2D evaluate_plane(const Polytope& k);
/// As evaluate_plane, but throws CertificateInvalid naming the first failing check.
Certificate2D certify_plane(const Polytope& k);

struct Partition3D {
  double v1 = 0.0;
  double v2 = 0.0;
  std::vector<double> blue;  // 8 pieces around the cube diagonals
  std::vector<double> red;   // 6 pieces around the coordinate axes
};

/// Splits a centrally and tetrahedrally symmetric body by the planes
/// (±1,±1,1)-perp. Throws SymmetryViolation when congruent pieces disagree
/// by more than tol_cert (relative).
Partition3D partition_3d(const Polytope& lp);

struct SectionAreas {
  double s_hex = 0.0;     // |L ∩ (1,1,1)-perp| / 6
  double s_square = 0.0;  // |L ∩ (0,0,1)-perp| / 4
};
SectionAreas section_areas(const Polytope& lp);

Certificate3D evaluate_space(const Polytope& k);
/// Throws NotSymmetric, or CertificateInvalid naming the first failing check.
Certificate3D certify_space(const Polytope& k);

struct ZangCheck {
  bool holds = false;
  double margin = 0.0;  // |K| - |u| |Pr_{u-perp} K| / n
};
/// Requires u on the boundary of K - K (NotOnBoundary otherwise).
ZangCheck check_zang(const Polytope& k, const Vec& u);
/// Same, with K - K already computed.
ZangCheck check_zang(const Polytope& k, const Polytope& difference, const Vec& u);

struct ZangSampling {
  int samples = 0;
  int violations = 0;
  double worst_margin = 0.0;
};
/// check_zang at n boundary points of K - K along directions uniform on the
/// circle or sphere (seeded).
ZangSampling sample_zang(const Polytope& k, int n, std::uint64_t seed);

struct DualityResidual {
  double residual = 0.0;  // area of the symmetric difference
  double area = 0.0;      // area of the section
};
/// Compares (K-K)° ∩ u-perp with the planar polar of Pr_{u-perp}(K-K).
DualityResidual check_section_projection_duality(const Polytope& k, const Vec& u);

struct ChainBound {
  double value = 0.0;             // |K-K| |(K-K)°| / binom(2n,n)
  double rs_ratio = 0.0;          // |K-K| / |K|
  double mahler_floor = 0.0;      // 4^n/n! / binom(2n,n): 4/3 in the plane, 8/15 in space
  double kuperberg_floor = 0.0;   // pi^n/n! / binom(2n,n), reported only
};
ChainBound chain_lower_bound(const Polytope& k);

inline constexpr double kEqualityTolerance = 1e-6;

/// Triangle with product at the floor.
bool detect_equality_2d(const Polytope& k);
/// Tetrahedrally symmetric tetrahedron with product at the floor.
bool detect_equality_3d(const Polytope& k);

}  // namespace mahler
