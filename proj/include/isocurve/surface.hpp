#ifndef ISOCURVE_SURFACE_HPP
#define ISOCURVE_SURFACE_HPP

#include <Eigen/Dense>
#include <memory>
#include <string>

#include "isocurve/config.hpp"
#include "isocurve/expr.hpp"

namespace isocurve {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct Domain {
  double u_min = 0.0, u_max = 0.0, v_min = 0.0, v_max = 0.0;
  bool contains(double u, double v) const {
    return u >= u_min && u <= u_max && v >= v_min && v <= v_max;
  }
  bool empty() const { return !(u_min < u_max && v_min < v_max); }
};

/// Parametric chart (u,v) -> R^3 given by three closed-form components over
/// a rectangular domain. Immutable; safe to share across threads.
class SurfaceChart {
 public:
  SurfaceChart(std::string name, ExpressionAst x, ExpressionAst y, ExpressionAst z,
               Domain domain);

  const std::string& name() const noexcept { return name_; }
  const Domain& domain() const noexcept { return domain_; }
  const ExpressionAst& x() const noexcept { return x_; }
  const ExpressionAst& y() const noexcept { return y_; }
  const ExpressionAst& z() const noexcept { return z_; }

 private:
  std::string name_;
  ExpressionAst x_, y_, z_;
  Domain domain_;
};

using SurfaceChartPtr = std::shared_ptr<const SurfaceChart>;

/// Chart position and partial-derivative vectors at one (u,v) point.
/// Third-order partials are filled only at order 3.
struct ChartJet {
  double u = 0.0, v = 0.0;
  int order = 2;
  Vec3 position = Vec3::Zero();
  Vec3 phi_u = Vec3::Zero(), phi_v = Vec3::Zero();
  Vec3 phi_uu = Vec3::Zero(), phi_uv = Vec3::Zero(), phi_vv = Vec3::Zero();
  Vec3 phi_uuu = Vec3::Zero(), phi_uuv = Vec3::Zero(), phi_uvv = Vec3::Zero(),
       phi_vvv = Vec3::Zero();
};

struct FirstFundamentalForm {
  double E = 0.0, F = 0.0, G = 0.0;
  double E_u = 0.0, E_v = 0.0, F_u = 0.0, F_v = 0.0, G_u = 0.0, G_v = 0.0;
  double W = 0.0;  // sqrt(EG - F^2)
};

struct SecondFundamentalForm {
  double L = 0.0, M = 0.0, N = 0.0;
};

struct ChristoffelSymbols {
  double g1_11 = 0.0, g2_11 = 0.0;
  double g1_12 = 0.0, g2_12 = 0.0;  // symmetric in the lower indices
  double g1_22 = 0.0, g2_22 = 0.0;
};

/// Standard evaluates the textbook second-kind symbols; PaperLiteral keeps
/// two coefficients that differ in some printed references (see docs).
enum class ChristoffelMode { Standard, PaperLiteral };

/// Evaluates the chart map and its partials at (u,v) with jet arithmetic.
/// Throws DomainViolation outside the domain and NonImmersedPoint when
/// |phi_u x phi_v| <= eps_immersion.
ChartJet chart_jet(const SurfaceChart& surface, double u, double v, int order = 3,
                   double eps_immersion = default_eps_immersion());

/// E, F, G with their u,v derivatives assembled by the product rule from the
/// chart jet, plus W.
FirstFundamentalForm first_form(const ChartJet& jet);

Vec3 unit_normal(const ChartJet& jet, double eps_immersion = default_eps_immersion());

/// L, M, N against the unit normal; `flip_orientation` negates the normal.
SecondFundamentalForm second_form(const ChartJet& jet, bool flip_orientation = false,
                                  double eps_immersion = default_eps_immersion());

/// Christoffel symbols of the second kind from the first fundamental form.
/// Throws DegenerateMetric when EG - F^2 <= eps.
ChristoffelSymbols christoffel(const FirstFundamentalForm& form,
                               ChristoffelMode mode = ChristoffelMode::Standard,
                               double eps = kEpsDegenerateMetric);

}  // namespace isocurve

#endif  // ISOCURVE_SURFACE_HPP
