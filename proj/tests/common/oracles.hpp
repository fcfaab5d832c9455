// Test-side oracles and fixtures. Everything here is independent of the
// library's differentiation path: derivatives come from central differences
// on eval_scalar, polynomial composition is done on raw coefficient arrays,
// and the fixture charts/curves are the closed-form classics.
#ifndef ISOCURVE_TESTS_ORACLES_HPP
#define ISOCURVE_TESTS_ORACLES_HPP

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "isocurve/curve.hpp"
#include "isocurve/expr.hpp"
#include "isocurve/isometry.hpp"
#include "isocurve/surface.hpp"
#include "isocurve/util.hpp"

namespace isocurve::testing {

// ---------------------------------------------------------------------------
// finite-difference oracle

struct FdDerivatives {
  double f = 0.0;
  double fu = 0.0, fv = 0.0;
  double fuu = 0.0, fuv = 0.0, fvv = 0.0;
  double stencil_max = 0.0;  // largest |f| seen on the stencil
};

inline double eval_at(const ExpressionAst& ast, double u, double v) {
  return eval_scalar(ast, {{"u", u}, {"v", v}});
}

inline FdDerivatives central_differences(const ExpressionAst& ast, double u, double v,
                                         double h) {
  FdDerivatives d;
  const double fpp = eval_at(ast, u + h, v + h);
  const double fpm = eval_at(ast, u + h, v - h);
  const double fmp = eval_at(ast, u - h, v + h);
  const double fmm = eval_at(ast, u - h, v - h);
  const double fp0 = eval_at(ast, u + h, v);
  const double fm0 = eval_at(ast, u - h, v);
  const double f0p = eval_at(ast, u, v + h);
  const double f0m = eval_at(ast, u, v - h);
  const double f00 = eval_at(ast, u, v);
  d.f = f00;
  d.fu = (fp0 - fm0) / (2.0 * h);
  d.fv = (f0p - f0m) / (2.0 * h);
  d.fuu = (fp0 - 2.0 * f00 + fm0) / (h * h);
  d.fvv = (f0p - 2.0 * f00 + f0m) / (h * h);
  d.fuv = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
  for (double x : {fpp, fpm, fmp, fmm, fp0, fm0, f0p, f0m, f00})
    d.stencil_max = std::max(d.stencil_max, std::abs(x));
  return d;
}

/// The oracle's own error budget: cancellation noise measured by comparing
/// the h-stencil against the 4h-stencil (truncation there is 16x larger but
/// still negligible at these steps, so the difference is dominated by the
/// roundoff of the fine stencil), plus an ulp-level floor.
inline double fd_noise(double want_h, double want_4h, double stencil_max, double h,
                       int derivative_order) {
  const double eps = 2.220446049250313e-16;
  const double floor =
      64.0 * eps * stencil_max / (derivative_order == 1 ? 2.0 * h : h * h);
  return 2.0 * std::abs(want_h - want_4h) + floor;
}

/// |got - want| <= tol * max(1, |got|, |want|) + oracle noise
inline bool fd_matches(double got, double want_h, double want_4h, double tol,
                       double stencil_max, double h, int derivative_order) {
  return std::abs(got - want_h) <=
         tol * std::max({1.0, std::abs(got), std::abs(want_h)}) +
             fd_noise(want_h, want_4h, stencil_max, h, derivative_order);
}

// ---------------------------------------------------------------------------
// random expressions (always evaluable by construction; magnitudes filtered
// by the caller)

inline std::string random_expression(std::mt19937& rng, int depth) {
  std::uniform_real_distribution<double> coef(0.5, 2.5);
  std::uniform_int_distribution<int> pick_leaf(0, 2);
  auto leaf = [&]() -> std::string {
    switch (pick_leaf(rng)) {
      case 0: return "u";
      case 1: return "v";
      default: return format_double(std::round(coef(rng) * 100.0) / 100.0);
    }
  };
  if (depth <= 0) return leaf();

  std::uniform_int_distribution<int> pick(0, 11);
  const auto sub = [&]() { return random_expression(rng, depth - 1); };
  switch (pick(rng)) {
    case 0: return "(" + sub() + " + " + sub() + ")";
    case 1: return "(" + sub() + " - " + sub() + ")";
    case 2: return "(" + sub() + ")*(" + sub() + ")";
    case 3: return "(" + sub() + ")/(1.5 + (" + sub() + ")^2)";
    case 4: return "sin(" + sub() + ")";
    case 5: return "cos(" + sub() + ")";
    case 6: return "tanh(" + sub() + ")";
    case 7: return "exp(-(" + sub() + ")^2)";
    case 8: return "log(1.5 + (" + sub() + ")^2)";
    case 9: return "sqrt(1.5 + (" + sub() + ")^2)";
    case 10: return "(" + sub() + ")^2";
    default: return "(" + sub() + ")^3";
  }
}

// ---------------------------------------------------------------------------
// bivariate cubic polynomials with exact coefficient-level derivatives

struct CubicPoly {
  // c[i][j] multiplies u^i v^j, i + j <= 3
  std::array<std::array<double, 4>, 4> c{};

  double eval(double u, double v) const {
    double acc = 0.0;
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; i + j <= 3; ++j)
        acc += c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
               std::pow(u, i) * std::pow(v, j);
    return acc;
  }

  /// exact value of d^(a+b) p / du^a dv^b at (u, v)
  double deriv(int a, int b, double u, double v) const {
    double acc = 0.0;
    for (int i = a; i <= 3; ++i)
      for (int j = b; i + j <= 3; ++j) {
        double k = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        for (int t = 0; t < a; ++t) k *= (i - t);
        for (int t = 0; t < b; ++t) k *= (j - t);
        acc += k * std::pow(u, i - a) * std::pow(v, j - b);
      }
    return acc;
  }

  std::string text() const {
    std::string out;
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; i + j <= 3; ++j) {
        const double k = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (k == 0.0) continue;
        if (!out.empty()) out += " + ";
        out += "(" + format_double(k) + ")";
        for (int t = 0; t < i; ++t) out += "*u";
        for (int t = 0; t < j; ++t) out += "*v";
      }
    return out.empty() ? "0" : out;
  }
};

inline CubicPoly random_cubic(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  CubicPoly p;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; i + j <= 3; ++j)
      p.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = num(rng) / 2.0;
  return p;
}

// ---------------------------------------------------------------------------
// fixture charts

inline SurfaceChartPtr make_chart(const std::string& name, const std::string& x,
                                  const std::string& y, const std::string& z, Domain d) {
  return std::make_shared<const SurfaceChart>(name, parse(x, {"u", "v"}), parse(y, {"u", "v"}),
                                              parse(z, {"u", "v"}), d);
}

inline SurfaceChartPtr plane() { return make_chart("plane", "u", "v", "0", {-4, 4, -4, 4}); }

inline SurfaceChartPtr plane_z1() {
  // the plane lifted to z = 1; normal curves on it have mu != 0
  return make_chart("plane_z1", "u", "v", "1", {-4, 4, -4, 4});
}

inline SurfaceChartPtr cylinder() {
  return make_chart("cylinder", "cos(u)", "sin(u)", "v", {-4, 4, -4, 4});
}

inline SurfaceChartPtr sphere2() {
  return make_chart("sphere2", "2*cos(u)*cos(v)", "2*sin(u)*cos(v)", "2*sin(v)",
                    {-13, 13, -1.45, 1.45});
}

inline SurfaceChartPtr catenoid() {
  return make_chart("catenoid", "cosh(v)*cos(u)", "cosh(v)*sin(u)", "v", {-9, 9, -1.5, 1.5});
}

inline SurfaceChartPtr helicoid() {
  return make_chart("helicoid", "sinh(v)*cos(u)", "sinh(v)*sin(u)", "u", {-9, 9, -1.5, 1.5});
}

// ---------------------------------------------------------------------------
// fixture curves (closed-form unit-speed classics)

inline CurveOnSurface make_curve(SurfaceChartPtr host, const std::string& u,
                                 const std::string& v, Interval iv, bool unit_speed,
                                 const std::string& param = "s") {
  return CurveOnSurface(std::move(host), parse(u, {param}), parse(v, {param}), param, iv,
                        unit_speed);
}

/// origin-centered circle of radius 2 in the plane chart
inline CurveOnSurface plane_circle(SurfaceChartPtr host) {
  return make_curve(std::move(host), "2*cos(s/2)", "2*sin(s/2)",
                    {0.0, 4.0 * std::acos(-1.0)}, true);
}

/// unit-speed helix coordinates u = a s, v = b s (a^2 + b^2 = 1)
inline CurveOnSurface cylinder_helix(SurfaceChartPtr host, double a = 0.6, double b = 0.8) {
  return make_curve(std::move(host), format_double(a) + "*s", format_double(b) + "*s",
                    {0.0, 3.0}, true);
}

/// equator of the radius-2 sphere chart
inline CurveOnSurface sphere_equator(SurfaceChartPtr host) {
  return make_curve(std::move(host), "s/2", "0", {0.0, 4.0 * std::acos(-1.0)}, true);
}

/// latitude circle v = v0 on the radius-2 sphere, unit speed
inline CurveOnSurface sphere_latitude(SurfaceChartPtr host, double v0) {
  const double r = 2.0 * std::cos(v0);
  return make_curve(std::move(host), "s/" + format_double(r), format_double(v0),
                    {0.0, 2.0 * std::acos(-1.0) * r}, true);
}

/// latitude circle v = v0 on the catenoid, unit speed; a normal curve with
/// lambda = -cosh(v0), mu = v0
inline CurveOnSurface catenoid_latitude(SurfaceChartPtr host, double v0) {
  const double c = std::cosh(v0);
  return make_curve(std::move(host), "s/" + format_double(c), format_double(v0),
                    {0.0, 2.0 * std::acos(-1.0) * c}, true);
}

// ---------------------------------------------------------------------------
// random smooth curves, reparameterized by arc length

struct CurveRecipe {
  std::string u, v;
  Interval interval;
};

inline CurveRecipe random_curve_recipe(std::mt19937& rng, double cu, double cv, double ru,
                                       double rv) {
  std::uniform_real_distribution<double> unit(0.25, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 6.28);
  std::uniform_real_distribution<double> freq(0.6, 1.4);
  auto num = [&](double x) { return format_double(std::round(x * 1000.0) / 1000.0); };
  CurveRecipe r;
  r.u = num(cu) + " + " + num(ru * unit(rng)) + "*sin(" + num(freq(rng)) + "*t + " +
        num(phase(rng)) + ")";
  r.v = num(cv) + " + " + num(rv * unit(rng)) + "*cos(" + num(freq(rng)) + "*t + " +
        num(phase(rng)) + ")";
  r.interval = {0.0, 2.0};
  return r;
}

/// Draws a random bounded curve on the chart and reparameterizes it by arc
/// length. `cu, cv` center the band; `ru, rv` bound the coordinate swing.
inline CurveOnSurface random_unit_speed_curve(SurfaceChartPtr host, std::mt19937& rng,
                                              double cu, double cv, double ru, double rv) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    const CurveRecipe r = random_curve_recipe(rng, cu, cv, ru, rv);
    try {
      CurveOnSurface raw = make_curve(host, r.u, r.v, r.interval, false, "t");
      bool slow = false;
      for (int i = 0; i <= 16; ++i) {
        const double t = r.interval.s0 + r.interval.length() * i / 16.0;
        if (speed(raw, t) < 0.05) slow = true;
      }
      if (slow) continue;
      return reparameterize_by_arc_length(raw);
    } catch (const Error&) {
      continue;
    }
  }
  throw Error("could not draw a usable random curve");
}

}  // namespace isocurve::testing

#endif  // ISOCURVE_TESTS_ORACLES_HPP
