#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mahler/certificates.hpp"
#include "mahler/rng.hpp"

namespace mahler {

namespace {

double binom_2n_n(int n) { return n == 2 ? 6.0 : 20.0; }
double factorial(int n) { return n == 2 ? 2.0 : 6.0; }

ZangCheck zang_margin(const Polytope& k, const Vec& u) {
  double shadow = 0.0;
  if (k.dim() == 2) {
    Vec e = vec2(-u.y(), u.x()).normalized();
    shadow = support_value(k, e) + support_value(k, -e);
  } else {
    shadow = project(k, PlaneBasis::of(u)).volume();
  }
  ZangCheck out;
  out.margin = k.volume() - u.norm() * shadow / k.dim();
  out.holds = out.margin >= -tolerances().cert;
  return out;
}

}  // namespace

ZangCheck check_zang(const Polytope& k, const Vec& u) { return check_zang(k, difference_body(k), u); }

ZangCheck check_zang(const Polytope& k, const Polytope& d, const Vec& u) {
  if (std::abs(gauge(d, u) - 1.0) > tolerances().cert) {
    throw GeometryError(ErrorKind::NotOnBoundary, "direction is not on the boundary of K-K");
  }
  return zang_margin(k, u);
}

ZangSampling sample_zang(const Polytope& k, int n, std::uint64_t seed) {
  const Polytope d = difference_body(k);
  SplitMix64 rng(seed);
  ZangSampling out;
  out.worst_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    Vec dir = Vec::Zero();
    do {
      for (int c = 0; c < k.dim(); ++c) dir[c] = rng.normal();
    } while (dir.norm() < 1e-12);
    // On the boundary by construction.
    const ZangCheck z = zang_margin(k, dir / gauge(d, dir));
    ++out.samples;
    if (!z.holds) ++out.violations;
    out.worst_margin = std::min(out.worst_margin, z.margin);
  }
  return out;
}

DualityResidual check_section_projection_duality(const Polytope& k, const Vec& u) {
  if (k.dim() != 3) throw GeometryError(ErrorKind::DegenerateInput, "duality check is spatial");
  if (u.norm() == 0.0) throw GeometryError(ErrorKind::ZeroDirection, "zero direction");
  const PlaneBasis basis = PlaneBasis::of(u);
  const Polytope d = difference_body(k);
  const Polytope section = central_section(polar(d), basis);
  const Polytope dual = polar(project(d, basis));

  std::vector<Halfspace> both(section.facets().begin(), section.facets().end());
  both.insert(both.end(), dual.facets().begin(), dual.facets().end());
  const double common = halfspace_to_vertex(both, 2, Vec::Zero()).volume();

  DualityResidual out;
  out.area = section.volume();
  out.residual = std::max(0.0, section.volume() + dual.volume() - 2.0 * common);
  return out;
}

ChainBound chain_lower_bound(const Polytope& k) {
  const int n = k.dim();
  const Polytope d = difference_body(k);
  const double vd = d.volume();
  const double binom = binom_2n_n(n);
  ChainBound out;
  out.rs_ratio = vd / k.volume();
  out.value = vd * polar(d).volume() / binom;
  out.mahler_floor = std::pow(4.0, n) / factorial(n) / binom;
  out.kuperberg_floor = std::pow(std::numbers::pi, n) / factorial(n) / binom;
  return out;
}

}  // namespace mahler
