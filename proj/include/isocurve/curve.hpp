#ifndef ISOCURVE_CURVE_HPP
#define ISOCURVE_CURVE_HPP

#include <memory>
#include <string>

#include "isocurve/surface.hpp"

namespace isocurve {

struct Interval {
  double s0 = 0.0, s1 = 0.0;
  double length() const { return s1 - s0; }
  bool contains(double s) const {
    const double slack = 1e-9 * (1.0 + length());
    return s >= s0 - slack && s <= s1 + slack;
  }
};

/// Numeric arc-length parameterization: s(t) integrated by adaptive
/// Cash-Karp RK45, inverted through a monotone cubic guess refined by
/// Newton iterations against local Gauss-Legendre quadrature. Derivatives
/// of the inverse are exact inverse-function expressions, so downstream
/// jets stay accurate to roundoff.
class ArcLengthMap;

struct ParamJets {
  Jet u, v;  // univariate jets of the coordinate functions in the curve parameter
};

/// Coordinate curve s -> (u(s), v(s)) on a host chart. Immutable; all
/// queries are pure. Position-vector quantities are measured relative to
/// `origin` (default: the ambient origin).
class CurveOnSurface {
 public:
  CurveOnSurface(SurfaceChartPtr host, ExpressionAst u, ExpressionAst v,
                 std::string param_name, Interval interval, bool unit_speed = false,
                 Vec3 origin = Vec3::Zero());

  const SurfaceChart& host() const noexcept { return *host_; }
  const SurfaceChartPtr& host_ptr() const noexcept { return host_; }
  const ExpressionAst& u_expr() const noexcept { return u_; }
  const ExpressionAst& v_expr() const noexcept { return v_; }
  const std::string& param_name() const noexcept { return param_; }
  const Interval& interval() const noexcept { return interval_; }
  bool unit_speed() const noexcept { return unit_speed_; }
  const Vec3& origin() const noexcept { return origin_; }
  bool is_arc_length() const noexcept { return arc_ != nullptr; }

  /// Univariate jets of u and v at parameter s, order 2 or 3.
  ParamJets param_jets(double s, int order) const;

  /// Same curve re-hosted on another chart (the honest image under a chart
  /// correspondence). Re-validates the domain on the new host.
  CurveOnSurface rehosted(SurfaceChartPtr new_host) const;

  /// Same curve with a different position-vector origin.
  CurveOnSurface with_origin(const Vec3& origin) const;

  friend CurveOnSurface reparameterize_by_arc_length(const CurveOnSurface& curve, double rk_tol,
                                                     double min_speed);

 private:
  CurveOnSurface(SurfaceChartPtr host, ExpressionAst u, ExpressionAst v, std::string param_name,
                 Interval interval, bool unit_speed, Vec3 origin,
                 std::shared_ptr<const ArcLengthMap> arc);
  void validate() const;

  SurfaceChartPtr host_;
  ExpressionAst u_, v_;
  std::string param_;
  Interval interval_;
  bool unit_speed_ = false;
  Vec3 origin_ = Vec3::Zero();
  std::shared_ptr<const ArcLengthMap> arc_;
};

struct CurveJet {
  double s = 0.0;
  int order = 3;
  Vec3 position = Vec3::Zero();  // ambient position (not origin-shifted)
  Vec3 d1 = Vec3::Zero(), d2 = Vec3::Zero(), d3 = Vec3::Zero();
};

/// alpha, alpha', alpha'' (and alpha''' at order 3) assembled by the chain
/// rule from the host chart jet and the parameter jets.
CurveJet curve_jet(const CurveOnSurface& curve, double s, int order = 3);

/// |alpha'| evaluated through the first fundamental form.
double speed(const CurveOnSurface& curve, double s);

struct SpeedReport {
  int samples = 0;
  double max_deviation = 0.0;
  double eps = kEpsSpeed;
  bool pass = false;
};

/// Checks | |alpha'| - 1 | at uniformly spaced samples.
SpeedReport assert_unit_speed(const CurveOnSurface& curve, int samples = 64,
                              double eps_speed = default_eps_speed());

/// Rebuilds the curve over its arc-length parameter s in [0, L].
/// Throws SingularSpeed when the speed drops below min_speed.
CurveOnSurface reparameterize_by_arc_length(const CurveOnSurface& curve, double rk_tol = 1e-12,
                                            double min_speed = kMinSpeed);

struct FrenetApparatus {
  double s = 0.0;
  Vec3 t = Vec3::Zero(), n = Vec3::Zero(), b = Vec3::Zero();
  double kappa = 0.0, tau = 0.0;
};

/// Frenet frame of a unit-speed curve. Throws VanishingCurvature when
/// kappa <= eps_kappa; no frame is fabricated by continuity.
FrenetApparatus frenet(const CurveOnSurface& curve, double s,
                       double eps_kappa = default_eps_kappa());

enum class NormalCurvatureRoute { FundamentalForms, Acceleration };

/// kappa_n, either from u'^2 L + 2 u'v' M + v'^2 N or from alpha''.N.
double normal_curvature(const CurveOnSurface& curve, double s,
                        NormalCurvatureRoute route = NormalCurvatureRoute::FundamentalForms,
                        bool flip_orientation = false);

enum class GeodesicCurvatureMode { Beltrami, Extrinsic };

/// kappa_g via the Beltrami formula (Christoffel symbols, standard mode) or
/// extrinsically as alpha''.(N x alpha').
double geodesic_curvature(const CurveOnSurface& curve, double s,
                          GeodesicCurvatureMode mode = GeodesicCurvatureMode::Beltrami,
                          bool flip_orientation = false);

enum class PositionClass { Normal, Osculating, Rectifying, General };

const char* to_string(PositionClass c);

struct PositionClassification {
  PositionClass cls = PositionClass::General;
  double delta = 0.0;   // alpha.t
  double lambda = 0.0;  // alpha.n
  double mu = 0.0;      // alpha.b
  double eps_used = 0.0;
};

/// Classifies the position vector against the Frenet planes with threshold
/// eps_class_rel * (1 + |alpha|). Normal takes precedence over osculating,
/// which takes precedence over rectifying.
PositionClassification classify_position(const CurveOnSurface& curve, double s,
                                         double eps_class_rel = default_eps_class_rel());

struct NormalDecomposition {
  double lambda = 0.0, mu = 0.0;
  double reconstruction_error = 0.0;
};

/// (lambda, mu) with alpha = lambda n + mu b. Throws NotANormalCurve
/// (carrying alpha.t) when the curve is not normal at s.
NormalDecomposition normal_decomposition(const CurveOnSurface& curve, double s,
                                         double eps_class_rel = default_eps_class_rel());

struct CurveScalars {
  double s = 0.0;
  double kappa = 0.0, tau = 0.0;
  double kappa_n = 0.0, kappa_g = 0.0;
  double lambda = 0.0, mu = 0.0, delta = 0.0;
};

/// One-stop sample record for sweeps: Frenet scalars, curvature components
/// and the position decomposition.
CurveScalars curve_scalars(const CurveOnSurface& curve, double s);

}  // namespace isocurve

#endif  // ISOCURVE_CURVE_HPP
