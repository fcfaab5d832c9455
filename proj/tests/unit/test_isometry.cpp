#include <doctest.h>

#include <random>

#include "common/oracles.hpp"
#include "isocurve/isometry.hpp"

using namespace isocurve;
using namespace isocurve::testing;

namespace {

const double kPi = std::acos(-1.0);

SurfacePair plane_cylinder() { return SurfacePair(plane(), cylinder()); }
SurfacePair catenoid_helicoid() { return SurfacePair(catenoid(), helicoid()); }

}  // namespace

TEST_CASE("plane and cylinder are isometric over the shared chart") {
  const IsometryReport r = check_isometry(plane_cylinder(), {50, 50});
  CHECK(r.pass);
  CHECK(r.max_dev_E < 1e-12);
  CHECK(r.max_dev_F < 1e-12);
  CHECK(r.max_dev_G < 1e-12);
  for (double d : r.max_dev_derivatives) CHECK(d < 1e-12);
}

TEST_CASE("catenoid and helicoid are isometric over the shared chart") {
  const IsometryReport r = check_isometry(catenoid_helicoid(), {50, 50});
  CHECK(r.pass);
  CHECK(r.max_dev_E < 1e-9);
  CHECK(r.max_dev_F < 1e-9);
  CHECK(r.max_dev_G < 1e-9);
}

TEST_CASE("plane vs sphere fails with a reported metric deviation") {
  const SurfacePair bad(plane(), sphere2());
  const IsometryReport r = check_isometry(bad, {20, 20});
  CHECK(!r.pass);
  CHECK(r.max_dev_E > 0.1);
}

TEST_CASE("second-derivative dot-product identities") {
  const SecondDerivativeIdentityReport a =
      check_second_derivative_identities(plane_cylinder(), {50, 50});
  CHECK(a.pass);
  CHECK(a.max_dev_overall < 1e-12);

  const SecondDerivativeIdentityReport b =
      check_second_derivative_identities(catenoid_helicoid(), {50, 50});
  CHECK(b.pass);
  CHECK(b.max_dev_overall < 1e-9);

  // diagnostic mode on a non-isometric pair still reports deviations
  const SecondDerivativeIdentityReport c =
      check_second_derivative_identities(SurfacePair(plane(), sphere2()), {10, 10});
  CHECK(!c.pass);
  CHECK(c.max_dev_overall > 0.1);
}

TEST_CASE("pushforward frames") {
  SUBCASE("identity pair gives the identity matrix") {
    const SurfacePair id(plane(), plane());
    const PushforwardFrame f = pushforward(id, 0.4, -0.7);
    CHECK((f.matrix - Mat3::Identity()).norm() < 1e-12);
    CHECK(f.det == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.orientation_preserving);
  }
  SUBCASE("plane to cylinder at the origin permutes the frame") {
    const PushforwardFrame f = pushforward(plane_cylinder(), 0.0, 0.0);
    CHECK((f.matrix * Vec3(1, 0, 0) - Vec3(0, 1, 0)).norm() < 1e-12);
    CHECK((f.matrix * Vec3(0, 1, 0) - Vec3(0, 0, 1)).norm() < 1e-12);
    CHECK((f.matrix * Vec3(0, 0, 1) - Vec3(1, 0, 0)).norm() < 1e-12);
  }
  SUBCASE("catenoid to helicoid is orthogonal on the tangent plane") {
    const PushforwardFrame f = pushforward(catenoid_helicoid(), 0.0, 0.0);
    CHECK(std::abs(std::abs(f.det) - 1.0) < 1e-9);
    // tangent dot products are preserved at several points
    for (double u : {-1.0, 0.3, 2.0})
      for (double v : {-0.8, 0.1, 0.9}) {
        const PushforwardFrame g = pushforward(catenoid_helicoid(), u, v);
        const ChartJet j = chart_jet(*catenoid(), u, v);
        const Vec3 iu = g.matrix * j.phi_u;
        const Vec3 iv = g.matrix * j.phi_v;
        CHECK(std::abs(iu.dot(iu) - j.phi_u.dot(j.phi_u)) < 1e-9);
        CHECK(std::abs(iu.dot(iv) - j.phi_u.dot(j.phi_v)) < 1e-9);
        CHECK(std::abs(iv.dot(iv) - j.phi_v.dot(j.phi_v)) < 1e-9);
      }
  }
}

TEST_CASE("transport_curve is plain substitution into the target chart") {
  SUBCASE("circle transported to the cylinder") {
    const SurfacePair pc = plane_cylinder();
    const CurveOnSurface image = transport_curve(pc, plane_circle(pc.source_ptr()));
    for (double s : {0.0, 1.2, 4.0}) {
      const double u = 2.0 * std::cos(s / 2), v = 2.0 * std::sin(s / 2);
      const Vec3 want(std::cos(u), std::sin(u), v);
      CHECK((curve_jet(image, s, 2).position - want).norm() < 1e-13);
    }
  }
  SUBCASE("helix coordinates transported to the plane become a line") {
    const SurfacePair cp(cylinder(), plane());
    const CurveOnSurface image = transport_curve(cp, cylinder_helix(cp.source_ptr()));
    for (double s : {0.0, 0.9, 2.4}) {
      const Vec3 want(0.6 * s, 0.8 * s, 0.0);
      CHECK((curve_jet(image, s, 2).position - want).norm() < 1e-13);
    }
  }
  SUBCASE("identity pair gives back the same curve pointwise") {
    const SurfacePair id(plane(), plane());
    const CurveOnSurface c = plane_circle(id.source_ptr());
    const CurveOnSurface image = transport_curve(id, c);
    for (double s : {0.3, 2.2})
      CHECK((curve_jet(image, s).position - curve_jet(c, s).position).norm() == 0.0);
  }
  SUBCASE("wrong host is rejected") {
    CHECK_THROWS_AS(transport_curve(plane_cylinder(), plane_circle(plane())),
                    PreconditionError);
  }
  SUBCASE("image must stay in the target domain") {
    const SurfaceChartPtr small_cylinder =
        make_chart("small", "cos(u)", "sin(u)", "v", {-1, 1, -1, 1});
    const SurfacePair pair(plane(), small_cylinder);
    CHECK_THROWS_AS(transport_curve(pair, plane_circle(pair.source_ptr())), DomainViolation);
  }
}

TEST_CASE("speeds are intrinsic: transported curves keep their speed") {
  std::mt19937 rng(21);
  const SurfacePair pairs[] = {plane_cylinder(), catenoid_helicoid()};
  for (const auto& pair : pairs) {
    const CurveOnSurface c =
        random_unit_speed_curve(pair.source_ptr(), rng, 0.0, 0.1, 1.2, 0.6);
    const CurveOnSurface image = transport_curve(pair, c);
    for (int i = 0; i <= 20; ++i) {
      const double s = c.interval().s0 + c.interval().length() * i / 20.0;
      CHECK(std::abs(speed(image, s) - speed(c, s)) < 1e-9);
    }
  }
}

TEST_CASE("geodesic curvature is invariant for 100 random curves over the two pairs") {
  std::mt19937 rng(22);
  const SurfacePair pairs[] = {plane_cylinder(), catenoid_helicoid()};
  double worst = 0.0;
  for (const auto& pair : pairs) {
    for (int trial = 0; trial < 50; ++trial) {
      const CurveOnSurface c =
          random_unit_speed_curve(pair.source_ptr(), rng, 0.0, 0.1, 1.4, 0.6);
      const CurveOnSurface image = transport_curve(pair, c);
      for (int i = 0; i <= 10; ++i) {
        const double s = c.interval().s0 + c.interval().length() * i / 10.0;
        worst = std::max(worst,
                         std::abs(geodesic_curvature(image, s) - geodesic_curvature(c, s)));
      }
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("pair construction requires overlapping domains") {
  const SurfaceChartPtr left = make_chart("left", "u", "v", "0", {-2, -1, 0, 1});
  const SurfaceChartPtr right = make_chart("right", "u", "v", "0", {1, 2, 0, 1});
  CHECK_THROWS_AS(SurfacePair(left, right), Error);
}
