#include <algorithm>
#include <cmath>

#include "mahler/certificates.hpp"
#include "checks.hpp"

namespace mahler {

std::string first_failure(const std::vector<Inequality>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return c.name;
  }
  return {};
}

namespace {

Vec boundary_point(const Polytope& l, const Vec& dir) { return dir / gauge(l, dir); }

// Area of L ∩ cone(r1, r2), r1 -> r2 counterclockwise, both rays at most pi apart.
double sector_area(const Polytope& l, const Vec& r1, const Vec& r2) {
  std::vector<Halfspace> hs(l.facets().begin(), l.facets().end());
  hs.push_back({vec2(r1.y(), -r1.x()), 0.0});  // det(r1, x) >= 0
  hs.push_back({vec2(-r2.y(), r2.x()), 0.0});  // det(x, r2) >= 0
  Vec inside = (boundary_point(l, r1) + boundary_point(l, r2)) / 3.0;
  return halfspace_to_vertex(hs, 2, inside).volume();
}

double det2(const Vec& a, const Vec& b) { return a.x() * b.y() - a.y() * b.x(); }

// Length of the projection of a planar body onto the line orthogonal to u.
double width_across(const Polytope& k, const Vec& u) {
  Vec e = vec2(-u.y(), u.x()).normalized();
  return support_value(k, e) + support_value(k, -e);
}

}  // namespace

HexagonFrame inscribe_affine_hexagon(const Polytope& l) {
  if (l.dim() != 2) throw GeometryError(ErrorKind::DegenerateInput, "hexagon frame is planar");
  const double tol = tolerances().cert;
  if (!same_vertices(l, scale(l, -1.0), tol * std::max(1.0, l.extent()))) {
    throw GeometryError(ErrorKind::NotCentrallySymmetric, "body is not centrally symmetric");
  }
  if (!origin_interior(l, tolerances().geom)) {
    throw GeometryError(ErrorKind::OriginNotInterior, "frame needs the origin inside");
  }

  const Vec u = boundary_point(l, vec2(1.0, 0.0));
  const double phi0 = std::atan2(u.y(), u.x());
  auto w_at = [&](double phi) { return boundary_point(l, vec2(std::cos(phi), std::sin(phi))); };
  // g(phi0) = -1 and g(phi0 + pi) = +1; bisect for gauge(w - u) = 1.
  auto g = [&](double phi) { return gauge(l, w_at(phi) - u) - 1.0; };
  double lo = phi0, hi = phi0 + M_PI;
  double mid = 0.5 * (lo + hi);
  double gm = g(mid);
  constexpr int kMaxIter = 200;
  for (int it = 0; it < kMaxIter && hi - lo > 1e-15; ++it) {
    mid = 0.5 * (lo + hi);
    gm = g(mid);
    if (gm == 0.0) break;
    (gm < 0 ? lo : hi) = mid;
  }
  if (std::abs(gm) > tol) {
    throw GeometryError(ErrorKind::NoConvergence, "affine hexagon bisection did not converge");
  }
  const Vec w = w_at(mid);
  return {u, w - u};
}

Certificate2D evaluate_plane(const Polytope& k) {
  if (k.dim() != 2) throw GeometryError(ErrorKind::DegenerateInput, "planar certificate needs a 2D body");
  const double tol = tolerances().cert;
  Certificate2D cert;
  CheckList checks(tol);

  const Polytope l0 = polar(difference_body(k));
  cert.frame = inscribe_affine_hexagon(l0);
  const Vec& u = cert.frame.u;
  const Vec& v = cert.frame.v;
  checks.equal("frame_u_on_boundary", gauge(l0, u), 1.0);
  checks.equal("frame_v_on_boundary", gauge(l0, v), 1.0);
  checks.equal("frame_u_plus_v_on_boundary", gauge(l0, u + v), 1.0);

  // A sends the frame to (1,0), (0,1); K moves by A^{-T} so that
  // (A^{-T}K - A^{-T}K)° = A (K-K)°.
  Mat basis = linear2(u.x(), v.x(), u.y(), v.y());
  Mat a = basis.inverse();
  Mat a_inv_t = basis.transpose();
  cert.transform = a;
  const Polytope kt = apply_linear(k, a_inv_t);
  const Polytope dt = difference_body(kt);
  const Polytope lt = apply_linear(l0, a);
  cert.volume_k = kt.volume();
  cert.volume_polar = lt.volume();

  const Vec e1 = vec2(1, 0), e2 = vec2(0, 1), e12 = vec2(1, 1), me1 = vec2(-1, 0);
  cert.s1 = sector_area(lt, e1, e12);
  cert.s2 = sector_area(lt, e12, e2);
  cert.s3 = sector_area(lt, e2, me1);
  checks.equal("sector_completeness", 2.0 * (cert.s1 + cert.s2 + cert.s3), cert.volume_polar);

  const std::array<double, 3> s{cert.s1, cert.s2, cert.s3};
  const std::array<Vec, 3> dirs{e1, e2, vec2(-1, 1)};
  // Support directions whose support points are (a,1), (1,b), (c,1-c).
  const std::array<Vec, 3> normals{e2, e1, e12};
  const char* tags[3] = {"1", "2", "3"};
  for (int i = 0; i < 3; ++i) {
    const std::string t = tags[i];
    // Sector bound: every P in L satisfies <P, d_i> <= 2 S_i.
    checks.at_least("sector_bound_" + t, 2.0 * s[i], support_value(lt, dirs[i]));
    cert.scaled_directions[i] = dirs[i] / (2.0 * s[i]);
    cert.containment_residuals[i] = gauge(dt, cert.scaled_directions[i]);
    checks.at_least("containment_" + t, 1.0, cert.containment_residuals[i]);

    cert.chords[i] = support_point(dt, normals[i]);
    checks.equal("chord_on_boundary_" + t, normals[i].dot(cert.chords[i]), 1.0);

    const Vec& c = cert.chords[i];
    const double lemma_rhs = 0.5 * c.norm() * width_across(kt, c);
    const double det_rhs = 0.5 * std::abs(det2(c, cert.scaled_directions[i]));
    cert.zang_bounds[i] = 1.0 / (4.0 * s[i]);
    checks.at_least("zang_lemma_" + t, cert.volume_k, lemma_rhs);
    checks.at_least("projection_covers_" + t, lemma_rhs, det_rhs);
    checks.equal("chord_determinant_" + t, det_rhs, cert.zang_bounds[i]);
    checks.at_least("zang_bound_" + t, cert.volume_k, cert.zang_bounds[i]);
  }

  const double smin = std::min({cert.s1, cert.s2, cert.s3});
  cert.product = 2.0 * cert.volume_k * (cert.s1 + cert.s2 + cert.s3);
  cert.certified_bound = 6.0 * cert.volume_k * smin;
  checks.equal("product_identity", cert.product, cert.volume_k * cert.volume_polar);
  checks.at_least("product_dominates_bound", cert.product, cert.certified_bound);
  checks.at_least("bound_at_least_floor", cert.certified_bound, 1.5);

  cert.checks = checks.take();
  cert.valid = first_failure(cert.checks).empty();
  return cert;
}

Certificate2D certify_plane(const Polytope& k) {
  Certificate2D cert = evaluate_plane(k);
  if (!cert.valid) {
    throw GeometryError(ErrorKind::CertificateInvalid, "failed check " + first_failure(cert.checks));
  }
  return cert;
}

bool detect_equality_2d(const Polytope& k) {
  if (k.dim() != 2) throw GeometryError(ErrorKind::DegenerateInput, "planar equality test needs a 2D body");
  return k.vertices().size() == 3 && volume_product(k) <= 1.5 + kEqualityTolerance;
}

}  // namespace mahler
