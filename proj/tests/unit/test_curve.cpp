#include <doctest.h>

#include <random>

#include "common/oracles.hpp"
#include "isocurve/curve.hpp"

using namespace isocurve;
using namespace isocurve::testing;

namespace {

const double kPi = std::acos(-1.0);

void check_vec(const Vec3& got, const Vec3& want, double tol = 1e-12) {
  CHECK((got - want).norm() <= tol);
}

/// independent route: evaluate x(u(s), v(s)) by composing jets through the
/// expression evaluator instead of assembling chain-rule terms
CurveJet composed_curve_jet(const CurveOnSurface& curve, double s) {
  const ParamJets p = curve.param_jets(s, 3);
  std::map<std::string, Jet> bind{{"u", p.u}, {"v", p.v}};
  CurveJet out;
  out.s = s;
  out.order = 3;
  const ExpressionAst* comp[3] = {&curve.host().x(), &curve.host().y(), &curve.host().z()};
  for (int k = 0; k < 3; ++k) {
    const Jet c = eval_jet(*comp[k], bind);
    out.position[k] = c.value();
    out.d1[k] = c.d(1);
    out.d2[k] = c.d(2);
    out.d3[k] = c.d(3);
  }
  return out;
}

}  // namespace

TEST_CASE("curve jet fixtures") {
  SUBCASE("circle of radius 2 on the plane at s=0") {
    const CurveOnSurface c = plane_circle(plane());
    const CurveJet j = curve_jet(c, 0.0);
    check_vec(j.position, {2, 0, 0});
    check_vec(j.d1, {0, 1, 0});
    check_vec(j.d2, {-0.5, 0, 0});
  }
  SUBCASE("helix on the cylinder at s=0") {
    const CurveOnSurface c = cylinder_helix(cylinder());
    const CurveJet j = curve_jet(c, 0.0);
    check_vec(j.d1, {0, 0.6, 0.8}, 1e-14);
    CHECK(j.d1.norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("constant-u degenerate curve") {
    const CurveOnSurface c = make_curve(plane(), "1", "s", {-1.0, 1.0}, true);
    const CurveJet j = curve_jet(c, 0.3);
    check_vec(j.d1, {0, 1, 0});
  }
  SUBCASE("parameter outside the interval") {
    const CurveOnSurface c = plane_circle(plane());
    CHECK_THROWS_AS(curve_jet(c, 100.0), DomainViolation);
  }
}

TEST_CASE("assembled chain rule agrees with direct jet composition") {
  std::mt19937 rng(31);
  const auto curves = {plane_circle(plane()), cylinder_helix(cylinder()),
                       sphere_latitude(sphere2(), 0.5), catenoid_latitude(catenoid(), 0.7),
                       random_unit_speed_curve(catenoid(), rng, 0.0, 0.0, 1.5, 0.7)};
  for (const auto& curve : curves) {
    for (int i = 0; i <= 8; ++i) {
      const double s =
          curve.interval().s0 + curve.interval().length() * (0.05 + 0.9 * i / 8.0);
      const CurveJet a = curve_jet(curve, s);
      const CurveJet b = composed_curve_jet(curve, s);
      const double scale = 1.0 + a.position.norm();
      CHECK((a.position - b.position).norm() < 1e-12 * scale);
      CHECK((a.d1 - b.d1).norm() < 1e-11 * scale);
      CHECK((a.d2 - b.d2).norm() < 1e-11 * scale);
      CHECK((a.d3 - b.d3).norm() < 1e-10 * scale);
    }
  }
}

TEST_CASE("speed fixtures") {
  CHECK(speed(cylinder_helix(cylinder()), 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(speed(make_curve(plane(), "s", "0", {0, 1}, true), 0.4) == 1.0);
  CHECK(speed(make_curve(plane(), "2*s", "0", {0, 1}, false), 0.4) == 2.0);

  const SpeedReport ok = assert_unit_speed(plane_circle(plane()));
  CHECK(ok.pass);
  CHECK(ok.max_deviation < 1e-12);
  const SpeedReport bad = assert_unit_speed(make_curve(plane(), "2*s", "0", {0, 1}, false));
  CHECK(!bad.pass);
  CHECK(bad.max_deviation == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unit_speed declaration is validated at sample resolution") {
  CHECK_THROWS_AS(make_curve(plane(), "2*s", "0", {0, 1}, true), PreconditionError);
}

TEST_CASE("curves must stay inside the host domain") {
  CHECK_THROWS_AS(make_curve(plane(), "10*s", "0", {0, 1}, false), DomainViolation);
}

TEST_CASE("arc-length reparameterization") {
  SUBCASE("u = 2t on the plane becomes u = s over [0, 2]") {
    const CurveOnSurface raw = make_curve(plane(), "2*t", "0", {0, 1}, false, "t");
    const CurveOnSurface arc = reparameterize_by_arc_length(raw);
    CHECK(arc.is_arc_length());
    CHECK(arc.interval().s0 == 0.0);
    CHECK(arc.interval().s1 == doctest::Approx(2.0).epsilon(1e-10));
    for (double s : {0.0, 0.5, 1.3, 2.0}) {
      const ParamJets p = arc.param_jets(s, 3);
      CHECK(p.u.value() == doctest::Approx(s).epsilon(1e-10).scale(1.0));
      CHECK(p.u.d(1) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(std::abs(p.u.d(2)) < 1e-9);
      CHECK(std::abs(p.v.value()) < 1e-12);
    }
  }
  SUBCASE("already unit-speed helix reparameterizes to the identity") {
    const CurveOnSurface raw = cylinder_helix(cylinder());
    const CurveOnSurface arc = reparameterize_by_arc_length(raw);
    CHECK(arc.interval().s1 == doctest::Approx(3.0).epsilon(1e-10));
    for (double s : {0.0, 0.7, 1.9, 3.0}) {
      const CurveJet a = curve_jet(arc, s);
      const CurveJet b = curve_jet(raw, s);
      CHECK((a.position - b.position).norm() < 1e-10);
      CHECK((a.d1 - b.d1).norm() < 1e-10);
      CHECK((a.d2 - b.d2).norm() < 1e-9);
    }
  }
  SUBCASE("zero-speed point is rejected") {
    const CurveOnSurface raw = make_curve(plane(), "t^2", "0", {0, 1}, false, "t");
    CHECK_THROWS_AS(reparameterize_by_arc_length(raw), SingularSpeed);
  }
  SUBCASE("result is unit speed to roundoff") {
    std::mt19937 rng(17);
    const CurveOnSurface arc = random_unit_speed_curve(catenoid(), rng, 0.0, 0.2, 1.5, 0.6);
    const SpeedReport rep = assert_unit_speed(arc, 64, 1e-8);
    CHECK(rep.pass);
    CHECK(rep.max_deviation < 1e-10);
  }
  SUBCASE("re-tabulating an arc-length curve is rejected") {
    const CurveOnSurface arc =
        reparameterize_by_arc_length(make_curve(plane(), "2*t", "0", {0, 1}, false, "t"));
    CHECK_THROWS_AS(reparameterize_by_arc_length(arc), Error);
  }
}

TEST_CASE("frenet fixtures") {
  SUBCASE("circle of radius 2") {
    const CurveOnSurface c = plane_circle(plane());
    for (double s : {0.0, 1.0, 3.5}) {
      const FrenetApparatus f = frenet(c, s);
      CHECK(f.kappa == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(std::abs(f.tau) < 1e-10);
      check_vec(f.b, {0, 0, 1}, 1e-12);
    }
  }
  SUBCASE("helix kappa = a^2, tau = a b") {
    const CurveOnSurface c = cylinder_helix(cylinder(), 0.6, 0.8);
    for (double s : {0.2, 1.4, 2.8}) {
      const FrenetApparatus f = frenet(c, s);
      CHECK(f.kappa == doctest::Approx(0.36).epsilon(1e-9));
      CHECK(f.tau == doctest::Approx(0.48).epsilon(1e-9));
    }
  }
  SUBCASE("straight line has no frame") {
    const CurveOnSurface c = make_curve(plane(), "s", "0", {0, 1}, true);
    CHECK_THROWS_AS(frenet(c, 0.5), VanishingCurvature);
  }
  SUBCASE("non-unit-speed input is rejected loudly") {
    const CurveOnSurface c = make_curve(plane(), "2*s", "0", {0, 1}, false);
    CHECK_THROWS_AS(frenet(c, 0.5), PreconditionError);
  }
  SUBCASE("frame is orthonormal and right-handed") {
    const CurveOnSurface c = sphere_latitude(sphere2(), 0.6);
    const FrenetApparatus f = frenet(c, 1.0);
    CHECK(std::abs(f.t.dot(f.n)) < 1e-9);
    CHECK(std::abs(f.t.dot(f.b)) < 1e-9);
    CHECK(std::abs(f.n.dot(f.b)) < 1e-9);
    CHECK(f.t.cross(f.n).dot(f.b) > 0.0);
    CHECK(f.t.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.n.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.b.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("serret-frenet equations hold under finite differences") {
  const auto curves = {plane_circle(plane()), cylinder_helix(cylinder()),
                       sphere_latitude(sphere2(), 0.5), catenoid_latitude(catenoid(), 0.7)};
  const double h = 1e-2;
  for (const auto& curve : curves) {
    for (int i = 1; i <= 4; ++i) {
      const double s = curve.interval().s0 + curve.interval().length() * i / 6.0;
      const FrenetApparatus f0 = frenet(curve, s);
      const FrenetApparatus p2 = frenet(curve, s + 2 * h);
      const FrenetApparatus p1 = frenet(curve, s + h);
      const FrenetApparatus m1 = frenet(curve, s - h);
      const FrenetApparatus m2 = frenet(curve, s - 2 * h);
      auto d5 = [&](const Vec3& a2, const Vec3& a1, const Vec3& b1, const Vec3& b2) {
        return (-a2 + 8.0 * a1 - 8.0 * b1 + b2) / (12.0 * h);
      };
      const Vec3 dt = d5(p2.t, p1.t, m1.t, m2.t);
      const Vec3 dn = d5(p2.n, p1.n, m1.n, m2.n);
      const Vec3 db = d5(p2.b, p1.b, m1.b, m2.b);
      CHECK((dt - f0.kappa * f0.n).norm() < 1e-6);
      CHECK((dn + f0.kappa * f0.t - f0.tau * f0.b).norm() < 1e-6);
      CHECK((db + f0.tau * f0.n).norm() < 1e-6);
    }
  }
}

TEST_CASE("normal curvature fixtures and route agreement") {
  SUBCASE("plane curves have zero normal curvature") {
    CHECK(normal_curvature(plane_circle(plane()), 1.0) == 0.0);
  }
  SUBCASE("helix kappa_n = -a^2") {
    const CurveOnSurface c = cylinder_helix(cylinder(), 0.6, 0.8);
    CHECK(normal_curvature(c, 0.9) == doctest::Approx(-0.36).epsilon(1e-12));
  }
  SUBCASE("sphere equator kappa_n = -1/2 with the outward normal") {
    const CurveOnSurface c = sphere_equator(sphere2());
    CHECK(normal_curvature(c, 0.4) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(normal_curvature(c, 0.4, NormalCurvatureRoute::FundamentalForms, true) ==
          doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("form route matches acceleration route") {
    std::mt19937 rng(8);
    for (const auto& host : {plane(), cylinder(), sphere2(), catenoid()}) {
      const CurveOnSurface c = random_unit_speed_curve(host, rng, 0.0, 0.1, 1.2, 0.6);
      for (int i = 0; i <= 10; ++i) {
        const double s = c.interval().s0 + c.interval().length() * i / 10.0;
        const double a = normal_curvature(c, s, NormalCurvatureRoute::FundamentalForms);
        const double b = normal_curvature(c, s, NormalCurvatureRoute::Acceleration);
        CHECK(std::abs(a - b) < 1e-9);
      }
    }
  }
}

TEST_CASE("geodesic curvature fixtures and mode agreement") {
  SUBCASE("helix is a geodesic of the cylinder") {
    const CurveOnSurface c = cylinder_helix(cylinder());
    CHECK(std::abs(geodesic_curvature(c, 1.2, GeodesicCurvatureMode::Beltrami)) < 1e-12);
    CHECK(std::abs(geodesic_curvature(c, 1.2, GeodesicCurvatureMode::Extrinsic)) < 1e-12);
  }
  SUBCASE("circle of radius 2 has |kappa_g| = 1/2 in the plane") {
    const CurveOnSurface c = plane_circle(plane());
    const double kg_b = geodesic_curvature(c, 0.8, GeodesicCurvatureMode::Beltrami);
    const double kg_e = geodesic_curvature(c, 0.8, GeodesicCurvatureMode::Extrinsic);
    CHECK(std::abs(kg_b) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(kg_b == doctest::Approx(kg_e).epsilon(1e-12));
  }
  SUBCASE("great circles are geodesics") {
    CHECK(std::abs(geodesic_curvature(sphere_equator(sphere2()), 1.0)) < 1e-12);
  }
  SUBCASE("sphere latitude kappa_g = tan(v0)/2") {
    const double v0 = 0.5;
    const CurveOnSurface c = sphere_latitude(sphere2(), v0);
    CHECK(geodesic_curvature(c, 0.7, GeodesicCurvatureMode::Beltrami) ==
          doctest::Approx(std::tan(v0) / 2).epsilon(1e-11));
    CHECK(geodesic_curvature(c, 0.7, GeodesicCurvatureMode::Extrinsic) ==
          doctest::Approx(std::tan(v0) / 2).epsilon(1e-11));
  }
  SUBCASE("beltrami matches extrinsic on random unit-speed curves") {
    std::mt19937 rng(9);
    for (const auto& host : {plane(), cylinder(), sphere2(), catenoid()}) {
      const CurveOnSurface c = random_unit_speed_curve(host, rng, 0.0, 0.1, 1.2, 0.6);
      for (int i = 0; i <= 10; ++i) {
        const double s = c.interval().s0 + c.interval().length() * i / 10.0;
        const double a = geodesic_curvature(c, s, GeodesicCurvatureMode::Beltrami);
        const double b = geodesic_curvature(c, s, GeodesicCurvatureMode::Extrinsic);
        CHECK(std::abs(a - b) < 1e-8);
      }
    }
  }
}

TEST_CASE("kappa^2 = kappa_n^2 + kappa_g^2 for unit-speed curves") {
  std::mt19937 rng(10);
  for (const auto& host : {plane(), cylinder(), sphere2(), catenoid()}) {
    const CurveOnSurface c = random_unit_speed_curve(host, rng, 0.0, 0.1, 1.2, 0.6);
    for (int i = 0; i <= 10; ++i) {
      const double s = c.interval().s0 + c.interval().length() * i / 10.0;
      const double k2 = curve_jet(c, s, 2).d2.squaredNorm();
      const double kn = normal_curvature(c, s);
      const double kg = geodesic_curvature(c, s);
      CHECK(std::abs(k2 - kn * kn - kg * kg) < 1e-8);
    }
  }
}

TEST_CASE("position classification") {
  SUBCASE("origin-centered circle is a normal curve with (lambda, mu) = (-2, 0)") {
    const CurveOnSurface c = plane_circle(plane());
    const PositionClassification r = classify_position(c, 1.1);
    CHECK(r.cls == PositionClass::Normal);
    CHECK(r.lambda == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(std::abs(r.mu) < 1e-9);
    const NormalDecomposition d = normal_decomposition(c, 1.1);
    CHECK(d.lambda == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(std::abs(d.mu) < 1e-9);
    CHECK(d.reconstruction_error < 1e-9);
  }
  SUBCASE("any curve on an origin-centered sphere is normal") {
    const CurveOnSurface c = sphere_latitude(sphere2(), 0.4);
    const PositionClassification r = classify_position(c, 2.0);
    CHECK(r.cls == PositionClass::Normal);
    CHECK(r.lambda == doctest::Approx(-2.0 * std::cos(0.4)).epsilon(1e-9));
    CHECK(r.mu == doctest::Approx(2.0 * std::sin(0.4)).epsilon(1e-9));
  }
  SUBCASE("great circle on the sphere decomposes as (-2, 0)") {
    const NormalDecomposition d = normal_decomposition(sphere_equator(sphere2()), 0.9);
    CHECK(d.lambda == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(std::abs(d.mu) < 1e-9);
  }
  SUBCASE("translated circle is not a normal curve") {
    const CurveOnSurface c =
        make_curve(plane(), "2*cos(s/2) + 1", "2*sin(s/2)", {0.0, 4.0 * kPi}, true);
    const PositionClassification r = classify_position(c, 1.0);
    CHECK(r.cls != PositionClass::Normal);
    CHECK(r.cls == PositionClass::Osculating);  // planar curve, alpha.b = 0
    CHECK_THROWS_AS(normal_decomposition(c, 1.0), NotANormalCurve);
    try {
      normal_decomposition(c, 1.0);
    } catch (const NotANormalCurve& e) {
      CHECK(std::abs(e.tangential_defect()) > 1e-3);
    }
  }
  SUBCASE("an origin offset relocates the classification") {
    const CurveOnSurface c =
        make_curve(plane(), "2*cos(s/2) + 1", "2*sin(s/2)", {0.0, 4.0 * kPi}, true)
            .with_origin(Vec3(1, 0, 0));
    CHECK(classify_position(c, 1.0).cls == PositionClass::Normal);
  }
  SUBCASE("line through the origin propagates VanishingCurvature") {
    const CurveOnSurface c = make_curve(plane(), "s", "0", {0.1, 1.0}, true);
    CHECK_THROWS_AS(classify_position(c, 0.5), VanishingCurvature);
  }
}

TEST_CASE("normal classification holds exactly when |alpha| is constant") {
  struct Case {
    CurveOnSurface curve;
    bool norm_constant;
  };
  const Case cases[] = {
      {plane_circle(plane()), true},
      {sphere_latitude(sphere2(), 0.4), true},
      {make_curve(plane(), "2*cos(s/2) + 1", "2*sin(s/2)", {0.0, 4.0 * kPi}, true), false},
      {cylinder_helix(cylinder()), false},
  };
  for (const auto& c : cases) {
    double norm_min = 1e300, norm_max = 0.0;
    bool all_normal = true;
    for (int i = 0; i <= 24; ++i) {
      const double s = c.curve.interval().s0 + c.curve.interval().length() * i / 24.0;
      const double r = curve_jet(c.curve, s, 2).position.norm();
      norm_min = std::min(norm_min, r);
      norm_max = std::max(norm_max, r);
      all_normal = all_normal && classify_position(c.curve, s).cls == PositionClass::Normal;
    }
    const bool constant = (norm_max - norm_min) / (1.0 + norm_max) < 1e-8;
    CHECK(constant == c.norm_constant);
    CHECK(all_normal == c.norm_constant);
  }
}

TEST_CASE("curve scalars bundle is consistent") {
  const CurveOnSurface c = catenoid_latitude(catenoid(), 0.7);
  const CurveScalars r = curve_scalars(c, 1.0);
  const double cc = std::cosh(0.7);
  CHECK(r.kappa == doctest::Approx(1.0 / cc).epsilon(1e-10));
  CHECK(r.lambda == doctest::Approx(-cc).epsilon(1e-9));
  CHECK(r.mu == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(std::abs(r.delta) < 1e-9);
  CHECK(r.kappa_n * r.kappa_n + r.kappa_g * r.kappa_g ==
        doctest::Approx(r.kappa * r.kappa).epsilon(1e-9));
}
