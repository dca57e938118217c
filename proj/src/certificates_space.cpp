#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "checks.hpp"
#include "mahler/certificates.hpp"
#include "mahler/symmetry.hpp"

namespace mahler {

std::string_view to_string(CaseTag c) {
  switch (c) {
    case CaseTag::Case1: return "Case1";
    case CaseTag::Case2: return "Case2";
    case CaseTag::Case3: return "Case3";
  }
  return "Case1";
}

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

// Normals of the four partition planes (±1,±1,1)-perp.
const std::array<Vec, 4>& partition_normals() {
  static const std::array<Vec, 4> n{Vec(1, 1, 1), Vec(1, -1, 1), Vec(-1, 1, 1), Vec(-1, -1, 1)};
  return n;
}

// Volume of L intersected with the open cone of directions whose sign
// pattern against the partition normals matches that of `axis`.
double cone_piece(const Polytope& l, const Vec& axis) {
  std::vector<Halfspace> hs(l.facets().begin(), l.facets().end());
  for (const auto& n : partition_normals()) {
    double s = n.dot(axis) > 0 ? 1.0 : -1.0;
    hs.push_back({-s * n, 0.0});  // s <n, x> >= 0
  }
  Vec inside = axis * (0.5 / gauge(l, axis));
  return halfspace_to_vertex(hs, 3, inside).volume();
}

// Largest relative deviation from the first entry.
double spread(const std::vector<double>& xs) {
  double worst = 0.0;
  for (double x : xs) worst = std::max(worst, std::abs(x - xs.front()));
  return worst / std::max(1e-300, std::abs(xs.front()));
}

Partition3D compute_partition(const Polytope& lp) {
  if (lp.dim() != 3) throw GeometryError(ErrorKind::DegenerateInput, "partition needs a 3D body");
  Partition3D out;
  // The 16 sign patterns of four planes leave 14 nonempty cones; each
  // contains exactly one of the 8 cube diagonals or the 6 axis directions.
  for (double sx : {1.0, -1.0}) {
    for (double sy : {1.0, -1.0}) {
      for (double sz : {1.0, -1.0}) out.blue.push_back(cone_piece(lp, Vec(sx, sy, sz)));
    }
  }
  for (int ax = 0; ax < 3; ++ax) {
    for (double s : {1.0, -1.0}) {
      Vec e = Vec::Zero();
      e[ax] = s;
      out.red.push_back(cone_piece(lp, e));
    }
  }
  out.v1 = 8.0 * out.blue.front();
  // red.front() is the +x piece; the +z piece {±x±y+z >= 0} is congruent.
  out.v2 = 6.0 * out.red.front();
  return out;
}

}  // namespace

Partition3D partition_3d(const Polytope& lp) {
  Partition3D out = compute_partition(lp);
  const double rel = tolerances().cert;
  if (spread(out.blue) > rel || spread(out.red) > rel) {
    throw GeometryError(ErrorKind::SymmetryViolation, "congruent partition pieces differ");
  }
  return out;
}

SectionAreas section_areas(const Polytope& lp) {
  SectionAreas s;
  s.s_hex = central_section(lp, PlaneBasis::of(Vec(1, 1, 1))).volume() / 6.0;
  s.s_square = central_section(lp, PlaneBasis::of(Vec(0, 0, 1))).volume() / 4.0;
  return s;
}

Certificate3D evaluate_space(const Polytope& k) {
  if (k.dim() != 3) throw GeometryError(ErrorKind::DegenerateInput, "spatial certificate needs a 3D body");
  if (!is_tetrahedrally_symmetric(k, tolerances().cert)) {
    throw GeometryError(ErrorKind::NotSymmetric, "body lacks tetrahedral symmetry");
  }
  Certificate3D cert;
  CheckList checks(tolerances().cert);

  const Polytope d = difference_body(k);
  const Polytope lp = polar(d);
  cert.volume_k = k.volume();
  cert.volume_polar = lp.volume();
  cert.product = cert.volume_k * cert.volume_polar;

  const Vec diag(1, 1, 1), ez(0, 0, 1);
  cert.a = 1.0 / gauge(lp, diag);
  cert.b = 1.0 / gauge(lp, ez);
  checks.equal("diagonal_chord_on_boundary", gauge(d, diag / (3.0 * cert.a)), 1.0);
  checks.equal("axis_chord_on_boundary", gauge(d, ez / cert.b), 1.0);

  const Partition3D part = compute_partition(lp);
  cert.v1 = part.v1;
  cert.v2 = part.v2;
  cert.blue_pieces = part.blue;
  cert.red_pieces = part.red;
  checks.equal("blue_pieces_congruent", spread(part.blue), 0.0);
  checks.equal("red_pieces_congruent", spread(part.red), 0.0);
  checks.equal("partition_tiles_polar", (cert.v1 + cert.v2) / cert.volume_polar, 1.0);

  const SectionAreas sec = section_areas(lp);
  cert.s_hex = sec.s_hex;
  cert.s_square = sec.s_square;

  const PlaneBasis sq_basis = PlaneBasis::of(ez);
  const PlaneBasis hex_basis = PlaneBasis::of(diag);
  cert.projection_square = project(k, sq_basis).volume();
  cert.projection_hexagon = project(k, hex_basis).volume();

  // (□): Pr_{z-perp} K is centrally symmetric, so its difference body has
  // four times its area; the planar symmetric bound |M||M°| >= 8 applied to
  // M = Pr(K-K), whose polar is the central section of (K-K)°.
  checks.equal("square_projection_symmetric", project(d, sq_basis).volume(), 4.0 * cert.projection_square);
  checks.at_least("square_planar_mahler", cert.projection_square * 4.0 * cert.s_square, 2.0);
  checks.at_least("estimate_square", cert.projection_square, 1.0 / (2.0 * cert.s_square));
  // (⬡): the planar bound 3/2 for Pr_{(1,1,1)-perp} K.
  checks.at_least("hexagon_planar_bound", cert.projection_hexagon * 6.0 * cert.s_hex, 1.5);
  checks.at_least("estimate_hexagon", cert.projection_hexagon, 1.0 / (4.0 * cert.s_hex));

  // Zang's lemma along the two chords.
  checks.at_least("zang_diagonal", cert.volume_k, cert.projection_hexagon / (3.0 * kSqrt3 * cert.a));
  checks.at_least("zang_axis", cert.volume_k, cert.projection_square / (3.0 * cert.b));

  // Cone inclusions behind the three estimates.
  checks.at_least("blue_cone_inclusion", cert.v1 / 8.0, cert.a * cert.s_hex / kSqrt3);
  checks.at_least("red_cone_inclusion", cert.v2 / 6.0, 4.0 / (3.0 * kSqrt3) * cert.s_hex * cert.b);
  checks.at_least("octant_cone_inclusion", cert.volume_polar / 8.0, cert.a * cert.s_square);

  const double ratio = cert.s_hex / cert.s_square;
  const double e1 = cert.volume_k * cert.v1;
  const double e2 = cert.volume_k * cert.v2;
  const double e3 = cert.volume_k * cert.volume_polar;
  cert.estimates = {EstimateValue{"estimate_1", e1, 2.0 / 9.0},
                    EstimateValue{"estimate_2", e2, 4.0 / (3.0 * kSqrt3) * ratio},
                    EstimateValue{"estimate_3", e3, 2.0 / (3.0 * kSqrt3) / ratio}};
  for (const auto& e : cert.estimates) checks.at_least(e.name, e.value, e.lower_bound);

  // Every case whose hypothesis holds is verified; the first one supplies
  // the certified bound.
  const double t = cert.s_square / cert.s_hex;
  cert.case_applicable = {cert.v2 >= 2.0 * cert.v1, 2.0 * cert.v1 >= cert.v2 && ratio >= 1.0 / kSqrt3, t >= kSqrt3};
  if (cert.case_applicable[0]) {
    cert.case_bounds[0] = 3.0 * e1;
    checks.at_least("case1_chain", cert.case_bounds[0], 3.0 * (2.0 / 9.0));
  }
  if (cert.case_applicable[1]) {
    cert.case_bounds[1] = 1.5 * e2;
    checks.at_least("case2_chain", cert.case_bounds[1], 1.5 * cert.estimates[1].lower_bound);
    checks.at_least("case2_closed_form", 1.5 * cert.estimates[1].lower_bound, 2.0 / 3.0);
  }
  if (cert.case_applicable[2]) {
    cert.case_bounds[2] = 0.5 * (e1 + e2 + e3);
    const double closed_form = 0.5 * (2.0 / 9.0 + 4.0 / (3.0 * kSqrt3) / t + 2.0 / (3.0 * kSqrt3) * t);
    checks.at_least("case3_chain", cert.case_bounds[2], closed_form);
    checks.at_least("case3_closed_form", closed_form, 2.0 / 3.0);
  }
  const int selected = cert.case_applicable[0] ? 0 : cert.case_applicable[1] ? 1 : cert.case_applicable[2] ? 2 : -1;
  checks.at_least("case_coverage", selected >= 0 ? 1.0 : 0.0, 1.0);
  if (selected >= 0) {
    cert.case_tag = static_cast<CaseTag>(selected);
    cert.certified_bound = cert.case_bounds[selected];
  }
  for (int c = 0; c < 3; ++c) {
    if (cert.case_applicable[c]) {
      checks.at_least("case" + std::to_string(c + 1) + "_bound_at_least_floor", cert.case_bounds[c], 2.0 / 3.0);
    }
  }
  checks.at_least("product_dominates_bound", cert.product, cert.certified_bound);
  checks.at_least("bound_at_least_floor", cert.certified_bound, 2.0 / 3.0);

  cert.checks = checks.take();
  cert.valid = first_failure(cert.checks).empty();
  return cert;
}

Certificate3D certify_space(const Polytope& k) {
  Certificate3D cert = evaluate_space(k);
  if (!cert.valid) {
    throw GeometryError(ErrorKind::CertificateInvalid, "failed check " + first_failure(cert.checks));
  }
  return cert;
}

bool detect_equality_3d(const Polytope& k) {
  if (k.dim() != 3 || !is_tetrahedrally_symmetric(k, tolerances().cert)) {
    throw GeometryError(ErrorKind::NotSymmetric, "equality test needs tetrahedral symmetry");
  }
  if (volume_product(k) > 2.0 / 3.0 + kEqualityTolerance) return false;
  return classify_low_vertex_symmetric(k) == SymmetryClass::Tetrahedron;
}

}  // namespace mahler
