#include "isocurve/curve.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "isocurve/util.hpp"

namespace isocurve {

namespace {

Jet param_seed(double value, int order) { return Jet::variable(value, 0, 1, order); }

CurveJet assemble_curve_jet(const ChartJet& cj, const Jet& uj, const Jet& vj, double s,
                            int order) {
  CurveJet out;
  out.s = s;
  out.order = order;
  const double u1 = uj.d(1), v1 = vj.d(1);
  const double u2 = uj.d(2), v2 = vj.d(2);
  out.position = cj.position;
  out.d1 = cj.phi_u * u1 + cj.phi_v * v1;
  out.d2 = cj.phi_u * u2 + cj.phi_v * v2 + cj.phi_uu * (u1 * u1) +
           cj.phi_uv * (2.0 * u1 * v1) + cj.phi_vv * (v1 * v1);
  if (order == 3) {
    const double u3 = uj.d(3), v3 = vj.d(3);
    out.d3 = cj.phi_u * u3 + cj.phi_v * v3 + cj.phi_uu * (3.0 * u1 * u2) +
             cj.phi_uv * (3.0 * (u2 * v1 + u1 * v2)) + cj.phi_vv * (3.0 * v1 * v2) +
             cj.phi_uuu * (u1 * u1 * u1) + cj.phi_uuv * (3.0 * u1 * u1 * v1) +
             cj.phi_uvv * (3.0 * u1 * v1 * v1) + cj.phi_vvv * (v1 * v1 * v1);
  }
  return out;
}

}  // namespace

/// Tabulated arc length s(t) with refined inversion. Holds its own copy of
/// the source parameterization so the inverse stays valid independently of
/// the curve object that created it.
class ArcLengthMap {
 public:
  ArcLengthMap(SurfaceChartPtr host, ExpressionAst u, ExpressionAst v, std::string param,
               Interval t_interval, double rk_tol, double min_speed)
      : host_(std::move(host)), u_(std::move(u)), v_(std::move(v)), param_(std::move(param)),
        t_interval_(t_interval), min_speed_(min_speed) {
    integrate(rk_tol);
  }

  double total_length() const { return s_nodes_.back(); }

  // jets of the source coordinate functions in t, order 2 or 3
  ParamJets source_jets(double t, int order) const {
    std::map<std::string, Jet> b{{param_, param_seed(t, order)}};
    return {eval_jet(u_, b), eval_jet(v_, b)};
  }

  double sigma(double t) const {
    ParamJets p = source_jets(t, 2);
    const ChartJet cj = chart_jet(*host_, p.u.value(), p.v.value(), 2);
    const Vec3 d1 = cj.phi_u * p.u.d(1) + cj.phi_v * p.v.d(1);
    return d1.norm();
  }

  // speed and its first two t-derivatives from the order-3 curve jet
  void sigma_derivatives(double t, double& sig, double& dsig, double& ddsig) const {
    ParamJets p = source_jets(t, 3);
    const ChartJet cj = chart_jet(*host_, p.u.value(), p.v.value(), 3);
    const CurveJet a = assemble_curve_jet(cj, p.u, p.v, t, 3);
    const double q = a.d1.dot(a.d1);
    const double q1 = 2.0 * a.d1.dot(a.d2);
    const double q2 = 2.0 * (a.d2.dot(a.d2) + a.d1.dot(a.d3));
    sig = std::sqrt(q);
    dsig = q1 / (2.0 * sig);
    ddsig = q2 / (2.0 * sig) - q1 * q1 / (4.0 * sig * q);
  }

  /// Inverts s(t). The cubic Hermite guess is refined with Newton steps
  /// against s_k + gauss7(sigma, t_k, t).
  double t_of_s(double s) const {
    const double L = total_length();
    s = std::clamp(s, 0.0, L);
    auto it = std::upper_bound(s_nodes_.begin(), s_nodes_.end(), s);
    std::size_t k = static_cast<std::size_t>(std::distance(s_nodes_.begin(), it));
    k = std::min(std::max<std::size_t>(k, 1), s_nodes_.size() - 1) - 1;

    const double s0 = s_nodes_[k], s1 = s_nodes_[k + 1];
    const double t0 = t_nodes_[k], t1 = t_nodes_[k + 1];
    const double m0 = 1.0 / sigma_nodes_[k], m1 = 1.0 / sigma_nodes_[k + 1];
    const double hs = s1 - s0;
    const double x = (s - s0) / hs;
    const double h00 = (1.0 + 2.0 * x) * (1.0 - x) * (1.0 - x);
    const double h10 = x * (1.0 - x) * (1.0 - x);
    const double h01 = x * x * (3.0 - 2.0 * x);
    const double h11 = x * x * (x - 1.0);
    double t = h00 * t0 + h10 * hs * m0 + h01 * t1 + h11 * hs * m1;

    const double tol = 1e-13 * (1.0 + L);
    for (int iter = 0; iter < 12; ++iter) {
      t = std::clamp(t, t0, t1);
      const double f = s0 + gauss7(t0, t) - s;
      if (std::abs(f) <= tol) break;
      t -= f / sigma(t);
    }
    return std::clamp(t, t0, t1);
  }

 private:
  double gauss7(double a, double b) const {
    static constexpr double kX[4] = {0.0, 0.4058451513773972, 0.7415311855993945,
                                     0.9491079123427585};
    static constexpr double kW[4] = {0.4179591836734694, 0.3818300505051189,
                                     0.2797053914892766, 0.1294849661688697};
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = kW[0] * sigma(mid);
    for (int i = 1; i < 4; ++i)
      acc += kW[i] * (sigma(mid + half * kX[i]) + sigma(mid - half * kX[i]));
    return acc * half;
  }

  void check_speed(double t, double sig) const {
    if (!(sig >= min_speed_))
      throw SingularSpeed("speed " + format_double(sig) + " below " +
                          format_double(min_speed_) + " at parameter " + format_double(t));
  }

  // Cash-Karp embedded 4(5) pair on ds/dt = sigma(t)
  void integrate(double rk_tol) {
    static constexpr double kC[6] = {0.0, 1.0 / 5, 3.0 / 10, 3.0 / 5, 1.0, 7.0 / 8};
    static constexpr double kB5[6] = {37.0 / 378,  0.0, 250.0 / 621,
                                      125.0 / 594, 0.0, 512.0 / 1771};
    static constexpr double kB4[6] = {2825.0 / 27648, 0.0,           18575.0 / 48384,
                                      13525.0 / 55296, 277.0 / 14336, 1.0 / 4};

    const double t_begin = t_interval_.s0, t_end = t_interval_.s1;
    const double span = t_end - t_begin;
    if (!(span > 0.0)) throw Error("arc length: empty parameter interval");

    double t = t_begin;
    double s = 0.0;
    double sig0 = sigma(t);
    check_speed(t, sig0);
    t_nodes_.push_back(t);
    s_nodes_.push_back(s);
    sigma_nodes_.push_back(sig0);

    const double h_max = span / 32.0;
    const double h_min = span * 1e-12;
    double h = span / 128.0;
    int guard = 0;
    while (t < t_end) {
      if (++guard > 2000000) throw Error("arc length: integration did not converge");
      h = std::min({h, h_max, t_end - t});
      double k[6];
      for (int i = 0; i < 6; ++i) {
        const double ti = t + kC[i] * h;
        k[i] = sigma(std::min(ti, t_end));
        check_speed(ti, k[i]);
      }
      double inc5 = 0.0, inc4 = 0.0;
      for (int i = 0; i < 6; ++i) {
        inc5 += kB5[i] * k[i];
        inc4 += kB4[i] * k[i];
      }
      const double err = std::abs(inc5 - inc4) * h;
      const double tol = rk_tol * std::max(1.0, std::abs(s));
      if (err <= tol || h <= h_min) {
        t += h;
        s += inc5 * h;
        t_nodes_.push_back(t);
        s_nodes_.push_back(s);
        sigma_nodes_.push_back(sigma(t));
        if (err > 0.0) h *= std::min(5.0, 0.9 * std::pow(tol / err, 0.2));
        else h *= 5.0;
      } else {
        h *= std::max(0.1, 0.9 * std::pow(tol / err, 0.25));
      }
    }
  }

  SurfaceChartPtr host_;
  ExpressionAst u_, v_;
  std::string param_;
  Interval t_interval_;
  double min_speed_;
  std::vector<double> t_nodes_, s_nodes_, sigma_nodes_;
};

CurveOnSurface::CurveOnSurface(SurfaceChartPtr host, ExpressionAst u, ExpressionAst v,
                               std::string param_name, Interval interval, bool unit_speed,
                               Vec3 origin)
    : CurveOnSurface(std::move(host), std::move(u), std::move(v), std::move(param_name),
                     interval, unit_speed, std::move(origin), nullptr) {}

CurveOnSurface::CurveOnSurface(SurfaceChartPtr host, ExpressionAst u, ExpressionAst v,
                               std::string param_name, Interval interval, bool unit_speed,
                               Vec3 origin, std::shared_ptr<const ArcLengthMap> arc)
    : host_(std::move(host)), u_(std::move(u)), v_(std::move(v)), param_(std::move(param_name)),
      interval_(interval), unit_speed_(unit_speed), origin_(std::move(origin)),
      arc_(std::move(arc)) {
  if (!host_) throw Error("curve requires a host surface");
  if (!(interval_.s0 < interval_.s1)) throw Error("curve parameter interval is empty");
  validate();
}

void CurveOnSurface::validate() const {
  constexpr int kSamples = 33;  // sample-resolution checks, not a proof
  for (int i = 0; i < kSamples; ++i) {
    const double s =
        interval_.s0 + interval_.length() * static_cast<double>(i) / (kSamples - 1);
    ParamJets p = param_jets(s, 2);
    if (!host_->domain().contains(p.u.value(), p.v.value()))
      throw DomainViolation("curve leaves the domain of surface '" + host_->name() +
                            "' at parameter " + format_double(s));
    if (unit_speed_) {
      const ChartJet cj = chart_jet(*host_, p.u.value(), p.v.value(), 2);
      const FirstFundamentalForm f = first_form(cj);
      const double u1 = p.u.d(1), v1 = p.v.d(1);
      const double spd = std::sqrt(f.E * u1 * u1 + 2.0 * f.F * u1 * v1 + f.G * v1 * v1);
      if (std::abs(spd - 1.0) >= default_eps_speed())
        throw PreconditionError("curve declared unit_speed but | |alpha'| - 1 | = " +
                                format_double(std::abs(spd - 1.0)) + " at parameter " +
                                format_double(s));
    }
  }
}

ParamJets CurveOnSurface::param_jets(double s, int order) const {
  if (order != 2 && order != 3) throw Error("parameter jet order must be 2 or 3");
  if (!arc_) {
    std::map<std::string, Jet> b{{param_, param_seed(s, order)}};
    return {eval_jet(u_, b), eval_jet(v_, b)};
  }

  // arc-length route: compose the source jets with the numeric inverse t(s)
  const double t = arc_->t_of_s(s);
  ParamJets src = arc_->source_jets(t, order);
  double sig, dsig, ddsig;
  arc_->sigma_derivatives(t, sig, dsig, ddsig);

  // exact derivatives of the inverse map: t' = 1/sigma, t'' = -sigma'/sigma^3,
  // t''' = -sigma''/sigma^4 + 3 sigma'^2/sigma^5
  const double tp = 1.0 / sig;
  const double tpp = -dsig / (sig * sig * sig);
  std::array<double, 4> tc{t, tp, tpp / 2.0, 0.0};
  if (order == 3) {
    const double tppp = -ddsig / std::pow(sig, 4) + 3.0 * dsig * dsig / std::pow(sig, 5);
    tc[3] = tppp / 6.0;
  }
  const Jet t_jet = Jet::compose(param_seed(s, order), tc);

  auto compose_with_t = [&](const Jet& g) {
    std::array<double, 4> gc{g.value(), g.d(1), g.d(2) / 2.0, 0.0};
    if (order == 3) gc[3] = g.d(3) / 6.0;
    return Jet::compose(t_jet, gc);
  };
  return {compose_with_t(src.u), compose_with_t(src.v)};
}

CurveOnSurface CurveOnSurface::rehosted(SurfaceChartPtr new_host) const {
  return CurveOnSurface(std::move(new_host), u_, v_, param_, interval_, unit_speed_, origin_,
                        arc_);
}

CurveOnSurface CurveOnSurface::with_origin(const Vec3& origin) const {
  return CurveOnSurface(host_, u_, v_, param_, interval_, unit_speed_, origin, arc_);
}

CurveJet curve_jet(const CurveOnSurface& curve, double s, int order) {
  if (!curve.interval().contains(s))
    throw DomainViolation("parameter " + format_double(s) + " outside the curve interval");
  ParamJets p = curve.param_jets(s, order);
  const ChartJet cj = chart_jet(curve.host(), p.u.value(), p.v.value(), order);
  return assemble_curve_jet(cj, p.u, p.v, s, order);
}

double speed(const CurveOnSurface& curve, double s) {
  ParamJets p = curve.param_jets(s, 2);
  const ChartJet cj = chart_jet(curve.host(), p.u.value(), p.v.value(), 2);
  const FirstFundamentalForm f = first_form(cj);
  const double u1 = p.u.d(1), v1 = p.v.d(1);
  return std::sqrt(f.E * u1 * u1 + 2.0 * f.F * u1 * v1 + f.G * v1 * v1);
}

SpeedReport assert_unit_speed(const CurveOnSurface& curve, int samples, double eps_speed) {
  if (samples < 2) throw Error("assert_unit_speed needs at least 2 samples");
  SpeedReport report;
  report.samples = samples;
  report.eps = eps_speed;
  for (int i = 0; i < samples; ++i) {
    const double s = curve.interval().s0 +
                     curve.interval().length() * static_cast<double>(i) / (samples - 1);
    report.max_deviation = std::max(report.max_deviation, std::abs(speed(curve, s) - 1.0));
  }
  report.pass = report.max_deviation < eps_speed;
  return report;
}

CurveOnSurface reparameterize_by_arc_length(const CurveOnSurface& curve, double rk_tol,
                                            double min_speed) {
  if (curve.is_arc_length())
    throw Error("curve is already parameterized by arc length");
  auto map = std::make_shared<const ArcLengthMap>(curve.host_ptr(), curve.u_expr(),
                                                  curve.v_expr(), curve.param_name(),
                                                  curve.interval(), rk_tol, min_speed);
  Interval by_length{0.0, map->total_length()};
  return CurveOnSurface(curve.host_ptr(), curve.u_expr(), curve.v_expr(), curve.param_name(),
                        by_length, true, curve.origin(), std::move(map));
}

FrenetApparatus frenet(const CurveOnSurface& curve, double s, double eps_kappa) {
  const CurveJet a = curve_jet(curve, s, 3);
  const double spd = a.d1.norm();
  if (std::abs(spd - 1.0) > 1e-3)
    throw PreconditionError("frenet requires a unit-speed curve; |alpha'| = " +
                            format_double(spd));
  FrenetApparatus f;
  f.s = s;
  f.kappa = a.d2.norm();
  if (f.kappa <= eps_kappa)
    throw VanishingCurvature("kappa = " + format_double(f.kappa) + " at parameter " +
                             format_double(s) + "; Frenet frame undefined");
  f.t = a.d1;
  f.n = a.d2 / f.kappa;
  f.b = f.t.cross(f.n);
  const Vec3 cr = a.d1.cross(a.d2);
  f.tau = cr.dot(a.d3) / cr.squaredNorm();
  return f;
}

double normal_curvature(const CurveOnSurface& curve, double s, NormalCurvatureRoute route,
                        bool flip_orientation) {
  ParamJets p = curve.param_jets(s, 2);
  const ChartJet cj = chart_jet(curve.host(), p.u.value(), p.v.value(), 2);
  const double sign = flip_orientation ? -1.0 : 1.0;
  if (route == NormalCurvatureRoute::Acceleration) {
    const CurveJet a = assemble_curve_jet(cj, p.u, p.v, s, 2);
    return sign * a.d2.dot(unit_normal(cj));
  }
  const SecondFundamentalForm ff = second_form(cj);
  const double u1 = p.u.d(1), v1 = p.v.d(1);
  return sign * (ff.L * u1 * u1 + 2.0 * ff.M * u1 * v1 + ff.N * v1 * v1);
}

double geodesic_curvature(const CurveOnSurface& curve, double s, GeodesicCurvatureMode mode,
                          bool flip_orientation) {
  const double sign = flip_orientation ? -1.0 : 1.0;
  ParamJets p = curve.param_jets(s, 2);
  const ChartJet cj = chart_jet(curve.host(), p.u.value(), p.v.value(), 2);
  if (mode == GeodesicCurvatureMode::Extrinsic) {
    const CurveJet a = assemble_curve_jet(cj, p.u, p.v, s, 2);
    return sign * a.d2.dot(unit_normal(cj).cross(a.d1));
  }
  const FirstFundamentalForm f = first_form(cj);
  const ChristoffelSymbols g = christoffel(f);
  const double u1 = p.u.d(1), v1 = p.v.d(1);
  const double u2 = p.u.d(2), v2 = p.v.d(2);
  const double bracket = g.g2_11 * u1 * u1 * u1 +
                         (2.0 * g.g2_12 - g.g1_11) * u1 * u1 * v1 +
                         (g.g2_22 - 2.0 * g.g1_12) * u1 * v1 * v1 - g.g1_22 * v1 * v1 * v1 +
                         u1 * v2 - u2 * v1;
  return sign * bracket * f.W;
}

const char* to_string(PositionClass c) {
  switch (c) {
    case PositionClass::Normal: return "normal";
    case PositionClass::Osculating: return "osculating";
    case PositionClass::Rectifying: return "rectifying";
    case PositionClass::General: return "general";
  }
  return "general";
}

PositionClassification classify_position(const CurveOnSurface& curve, double s,
                                         double eps_class_rel) {
  const FrenetApparatus f = frenet(curve, s);
  const CurveJet a = curve_jet(curve, s, 2);
  const Vec3 pos = a.position - curve.origin();
  PositionClassification c;
  c.delta = pos.dot(f.t);
  c.lambda = pos.dot(f.n);
  c.mu = pos.dot(f.b);
  c.eps_used = eps_class_rel * (1.0 + pos.norm());
  if (std::abs(c.delta) < c.eps_used)
    c.cls = PositionClass::Normal;
  else if (std::abs(c.mu) < c.eps_used)
    c.cls = PositionClass::Osculating;
  else if (std::abs(c.lambda) < c.eps_used)
    c.cls = PositionClass::Rectifying;
  else
    c.cls = PositionClass::General;
  return c;
}

NormalDecomposition normal_decomposition(const CurveOnSurface& curve, double s,
                                         double eps_class_rel) {
  const PositionClassification c = classify_position(curve, s, eps_class_rel);
  if (c.cls != PositionClass::Normal)
    throw NotANormalCurve("position vector is not orthogonal to the tangent (alpha.t = " +
                              format_double(c.delta) + ")",
                          c.delta);
  const FrenetApparatus f = frenet(curve, s);
  const CurveJet a = curve_jet(curve, s, 2);
  const Vec3 pos = a.position - curve.origin();
  NormalDecomposition d;
  d.lambda = c.lambda;
  d.mu = c.mu;
  d.reconstruction_error = (pos - d.lambda * f.n - d.mu * f.b).norm();
  return d;
}

CurveScalars curve_scalars(const CurveOnSurface& curve, double s) {
  const FrenetApparatus f = frenet(curve, s);
  const PositionClassification c = classify_position(curve, s);
  CurveScalars out;
  out.s = s;
  out.kappa = f.kappa;
  out.tau = f.tau;
  out.kappa_n = normal_curvature(curve, s);
  out.kappa_g = geodesic_curvature(curve, s);
  out.lambda = c.lambda;
  out.mu = c.mu;
  out.delta = c.delta;
  return out;
}

}  // namespace isocurve
