#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "../support/bodies.hpp"
#include "mahler/geometry.hpp"

using namespace mahler;
using namespace testing_bodies;

namespace {

bool has_vertex(const Polytope& p, const Vec& v, double tol = 1e-12) {
  for (const auto& w : p.vertices()) {
    if ((w - v).norm() <= tol) return true;
  }
  return false;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  FAIL("expected a GeometryError");
  return ErrorKind::InvariantViolation;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("interior and duplicate points are dropped") {
    const Polytope p = convex_hull({vec2(0, 0), vec2(1, 0), vec2(0, 1), vec2(0.25, 0.25), vec2(1, 0)}, 2);
    REQUIRE(p.vertices().size() == 3);
    CHECK(has_vertex(p, vec2(0, 0)));
    CHECK(has_vertex(p, vec2(1, 0)));
    CHECK(has_vertex(p, vec2(0, 1)));
  }

  TEST_CASE("planar vertices are counterclockwise from the lexicographic minimum") {
    const Polytope p = convex_hull({vec2(1, 1), vec2(-1, 1), vec2(1, -1), vec2(-1, -1), vec2(0, 0.5)}, 2);
    REQUIRE(p.vertices().size() == 4);
    CHECK(p.vertices()[0].isApprox(vec2(-1, -1)));
    CHECK(p.vertices()[1].isApprox(vec2(1, -1)));
    CHECK(p.vertices()[2].isApprox(vec2(1, 1)));
    CHECK(p.vertices()[3].isApprox(vec2(-1, 1)));
  }

  TEST_CASE("points on edges are not vertices") {
    const Polytope p = convex_hull({vec2(0, 0), vec2(1, 0), vec2(2, 0), vec2(2, 2), vec2(0, 2), vec2(0, 1)}, 2);
    CHECK(p.vertices().size() == 4);
    CHECK(p.volume() == doctest::Approx(4.0));
  }

  TEST_CASE("nearly vertical collinear triples keep every corner") {
    // Three points on a vertical line whose x coordinates differ in the last bit.
    const double x = 1.7746283975914969;
    const Polytope p = convex_hull(
        {vec2(std::nextafter(x, 0.0), -0.2), vec2(x, 0.0), vec2(std::nextafter(x, 0.0), 0.2), vec2(-1, 1), vec2(-1, -1)},
        2);
    CHECK(p.vertices().size() == 4);
    CHECK(has_vertex(p, vec2(std::nextafter(x, 0.0), 0.2)));
    CHECK(has_vertex(p, vec2(std::nextafter(x, 0.0), -0.2)));
  }

  TEST_CASE("cube corners are all extreme") {
    const Polytope c = cube();
    CHECK(c.vertices().size() == 8);
    CHECK(c.facets().size() == 6);
    for (const auto& fv : c.facet_vertices()) CHECK(fv.size() == 4);
    CHECK(c.volume() == doctest::Approx(8.0).epsilon(1e-12));
  }

  TEST_CASE("cube with extra points on faces and edges") {
    const Polytope base = cube();
    std::vector<Vec> pts(base.vertices().begin(), base.vertices().end());
    pts.push_back(vec3(1, 0, 0));
    pts.push_back(vec3(1, 1, 0));
    pts.push_back(vec3(0.3, -1, 0.2));
    pts.push_back(vec3(0, 0, 0));
    const Polytope c = convex_hull(pts, 3);
    CHECK(c.vertices().size() == 8);
    CHECK(c.facets().size() == 6);
    CHECK(c.volume() == doctest::Approx(8.0).epsilon(1e-12));
  }

  TEST_CASE("3D vertices are sorted lexicographically") {
    const Polytope t = tet();
    for (std::size_t i = 1; i < t.vertices().size(); ++i) {
      const Vec& a = t.vertices()[i - 1];
      const Vec& b = t.vertices()[i];
      CHECK(std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3));
    }
  }

  TEST_CASE("degenerate inputs are rejected") {
    CHECK(kind_of([] { convex_hull({vec2(0, 0), vec2(1, 0), vec2(2, 0)}, 2); }) == ErrorKind::DegenerateInput);
    CHECK(kind_of([] { convex_hull({vec2(0, 0), vec2(1, 0)}, 2); }) == ErrorKind::DegenerateInput);
    CHECK(kind_of([] { convex_hull({vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0), vec3(1, 1, 0)}, 3); }) ==
          ErrorKind::DegenerateInput);
    CHECK(kind_of([] { convex_hull({vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)}, 4); }) ==
          ErrorKind::DegenerateInput);
    CHECK(kind_of([] { convex_hull({vec2(0, 0), vec2(1, 0), vec2(0, NAN)}, 2); }) == ErrorKind::DegenerateInput);
  }

  TEST_CASE("volumes of named bodies") {
    CHECK(volume(t0()) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(volume(square()) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(volume(cube()) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(volume(tet()) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
    CHECK(volume(octahedron()) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  }

  TEST_CASE("facets of the square") {
    const auto hs = vertex_to_halfspace(square());
    REQUIRE(hs.size() == 4);
    for (const auto& h : hs) {
      CHECK(h.normal.norm() == doctest::Approx(1.0));
      CHECK(h.offset == doctest::Approx(1.0));
      CHECK(std::abs(h.normal.x()) + std::abs(h.normal.y()) == doctest::Approx(1.0));
    }
  }

  TEST_CASE("halfspaces to vertices") {
    SUBCASE("triangle without an interior origin") {
      const std::vector<Halfspace> hs{{vec2(1, 1), 1}, {vec2(-1, 0), 0}, {vec2(0, -1), 0}};
      const Polytope p = halfspace_to_vertex(hs, 2);
      CHECK(same_vertices(p, t0(), 1e-12));
    }
    SUBCASE("unbounded") {
      const std::vector<Halfspace> hs{{vec2(1, 0), 1}};
      CHECK(kind_of([&] { halfspace_to_vertex(hs, 2); }) == ErrorKind::UnboundedRegion);
      const std::vector<Halfspace> slab{{vec2(1, 0), 1}, {vec2(-1, 0), 1}, {vec2(0, 1), 1}};
      CHECK(kind_of([&] { halfspace_to_vertex(slab, 2); }) == ErrorKind::UnboundedRegion);
    }
    SUBCASE("empty") {
      const std::vector<Halfspace> hs{{vec2(1, 0), -1}, {vec2(-1, 0), -1}, {vec2(0, 1), 1}, {vec2(0, -1), 1}};
      CHECK(kind_of([&] { halfspace_to_vertex(hs, 2); }) == ErrorKind::EmptyRegion);
    }
    SUBCASE("interior hint") {
      const auto hs = vertex_to_halfspace(translate(cube(), vec3(5, 5, 5)));
      const Polytope p = halfspace_to_vertex(hs, 3, vec3(5, 5.5, 4.5));
      CHECK(same_vertices(p, translate(cube(), vec3(5, 5, 5)), 1e-9));
      CHECK(kind_of([&] { halfspace_to_vertex(hs, 3, vec3(0, 0, 0)); }) == ErrorKind::OriginNotInterior);
    }
  }

  TEST_CASE("support values and points") {
    CHECK(support_value(square(), vec2(1, 0)) == doctest::Approx(1.0));
    const Vec sp = support_point(square(), vec2(1, 0));
    CHECK(sp.x() == doctest::Approx(1.0));
    CHECK(sp.isApprox(vec2(1, -1)));  // first in counterclockwise order
    CHECK(support_value(t0(), vec2(1, 1)) == doctest::Approx(1.0));
    CHECK(support_value(tet(), vec3(1, 1, 1)) == doctest::Approx(1.0));
    CHECK(kind_of([] { support_value(square(), vec2(0, 0)); }) == ErrorKind::ZeroDirection);
  }

  TEST_CASE("gauge") {
    CHECK(gauge(square(), vec2(0.5, 0)) == doctest::Approx(0.5));
    CHECK(gauge(square(), vec2(2, 2)) == doctest::Approx(2.0));
    const Polytope hex = convex_hull({vec2(1, 0), vec2(-1, 0), vec2(0, 1), vec2(0, -1), vec2(1, 1), vec2(-1, -1)}, 2);
    CHECK(gauge(hex, vec2(1, 1)) == doctest::Approx(1.0));
    CHECK(gauge(square(), vec2(0, 0)) == 0.0);
    CHECK(kind_of([] { gauge(t0(), vec2(0.1, 0.1)); }) == ErrorKind::OriginNotInterior);
  }

  TEST_CASE("containment") {
    CHECK(contains(cube(), vec3(0, 0, 0), 1e-9));
    CHECK(contains(cube(), vec3(1 + 1e-12, 0, 0), 1e-9));
    CHECK_FALSE(contains(cube(), vec3(1.1, 0, 0), 1e-9));
  }

  TEST_CASE("linear images") {
    CHECK(apply_linear(square(), 2.0 * Mat::Identity()).volume() == doctest::Approx(16.0));
    CHECK(same_vertices(apply_linear(t0(), Mat::Identity()), t0(), 1e-15));
    const Polytope sheared = apply_linear(square(), linear2(1, 1, 0, 1));
    CHECK(sheared.volume() == doctest::Approx(4.0));
    CHECK(sheared.vertices().size() == 4);
    CHECK(kind_of([] { apply_linear(square(), linear2(1, 2, 2, 4)); }) == ErrorKind::SingularMatrix);
    CHECK(det_in_dim(linear2(2, 0, 0, 3), 2) == doctest::Approx(6.0));
  }

  TEST_CASE("tolerances are process-wide and restorable") {
    const Tolerances saved = tolerances();
    set_tolerances({1e-8, 1e-6});
    CHECK(tolerances().geom == 1e-8);
    CHECK(tolerances().cert == 1e-6);
    set_tolerances(saved);
    CHECK(tolerances().geom == 1e-9);
  }

  TEST_CASE("SplitMix64 reproduces the reference stream") {
    SplitMix64 rng(1234567);
    const std::uint64_t expected[] = {6457827717110365317ull, 3203168211198807973ull, 9817491932198370423ull,
                                      4593380528125082431ull, 16408922859458223821ull};
    for (std::uint64_t e : expected) CHECK(rng.next() == e);
    SplitMix64 a(9), b(9);
    CHECK(a.split(3).next() == b.split(3).next());
    CHECK(a.split(3).next() != a.split(4).next());
    for (int i = 0; i < 1000; ++i) {
      const double u = a.uniform();
      CHECK((u >= 0.0 && u < 1.0));
    }
  }

  TEST_CASE("property: hull idempotence and halfspace round trip") {
    SplitMix64 rng(101);
    for (int i = 0; i < 60; ++i) {
      const Polytope p = i % 2 ? random_polygon(rng, 3 + i % 9) : random_polytope3(rng, 4 + i % 20);
      const Polytope again = convex_hull(std::vector<Vec>(p.vertices().begin(), p.vertices().end()), p.dim());
      CHECK(same_vertices(p, again, 1e-9));
      const Vec c = p.centroid_of_vertices();
      const Polytope round = halfspace_to_vertex(vertex_to_halfspace(p), p.dim(), c);
      CHECK(same_vertices(p, round, 1e-9 * std::max(1.0, p.extent())));
      // Facets are tight at >= dim vertices and every vertex satisfies every facet.
      for (std::size_t f = 0; f < p.facets().size(); ++f) {
        const Halfspace& h = p.facets()[f];
        int tight = 0;
        for (const auto& v : p.vertices()) {
          const double r = h.normal.dot(v) - h.offset;
          CHECK(r <= 1e-9);
          if (std::abs(r) <= 1e-9) ++tight;
        }
        CHECK(tight >= p.dim());
      }
    }
  }

  TEST_CASE("property: volume scales by |det|") {
    SplitMix64 rng(202);
    for (int i = 0; i < 60; ++i) {
      const int dim = 2 + i % 2;
      const Polytope p = dim == 2 ? random_polygon(rng, 8) : random_polytope3(rng, 12);
      const Mat m = random_linear(rng, dim);
      const double det = std::abs(det_in_dim(m, dim));
      CHECK(apply_linear(p, m).volume() == doctest::Approx(det * p.volume()).epsilon(1e-9));
    }
  }

  TEST_CASE("property: gauge along support points") {
    SplitMix64 rng(303);
    for (int i = 0; i < 40; ++i) {
      const int dim = 2 + i % 2;
      Polytope p = dim == 2 ? random_polygon(rng, 7) : random_polytope3(rng, 10);
      p = translate(p, -p.centroid_of_vertices());
      Vec u = Vec::Zero();
      for (int c = 0; c < dim; ++c) u[c] = rng.normal();
      const Vec sp = support_point(p, u);
      for (double s : {0.5, 1.0, 2.0}) CHECK(gauge(p, s * sp) == doctest::Approx(s).epsilon(1e-9));
    }
  }

  TEST_CASE("property: containment agrees with the gauge") {
    SplitMix64 rng(404);
    for (int i = 0; i < 10; ++i) {
      const int dim = 2 + i % 2;
      Polytope p = dim == 2 ? random_polygon(rng, 9) : random_polytope3(rng, 15);
      p = translate(p, -p.centroid_of_vertices());
      const double tol = 1e-9;
      for (int j = 0; j < 1000; ++j) {
        Vec x = Vec::Zero();
        for (int c = 0; c < dim; ++c) x[c] = rng.uniform(-2, 2);
        CHECK(contains(p, x, tol) == (gauge(p, x) <= 1.0 + tol));
      }
    }
  }
}
