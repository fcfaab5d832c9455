#include "isocurve/surface.hpp"

#include <cmath>

#include "isocurve/util.hpp"

namespace isocurve {

SurfaceChart::SurfaceChart(std::string name, ExpressionAst x, ExpressionAst y, ExpressionAst z,
                           Domain domain)
    : name_(std::move(name)), x_(std::move(x)), y_(std::move(y)), z_(std::move(z)),
      domain_(domain) {
  if (domain_.empty()) throw Error("surface '" + name_ + "': empty domain");
}

ChartJet chart_jet(const SurfaceChart& surface, double u, double v, int order,
                   double eps_immersion) {
  if (order != 2 && order != 3) throw Error("chart jet order must be 2 or 3");
  if (!surface.domain().contains(u, v))
    throw DomainViolation("point (" + format_double(u) + ", " + format_double(v) +
                          ") outside domain of surface '" + surface.name() + "'");

  std::map<std::string, Jet> bindings{{"u", Jet::variable(u, 0, 2, order)},
                                      {"v", Jet::variable(v, 1, 2, order)}};

  ChartJet jet;
  jet.u = u;
  jet.v = v;
  jet.order = order;
  const ExpressionAst* components[3] = {&surface.x(), &surface.y(), &surface.z()};
  for (int k = 0; k < 3; ++k) {
    const Jet c = eval_jet(*components[k], bindings);
    jet.position[k] = c.value();
    jet.phi_u[k] = c.d(1, 0);
    jet.phi_v[k] = c.d(0, 1);
    jet.phi_uu[k] = c.d(2, 0);
    jet.phi_uv[k] = c.d(1, 1);
    jet.phi_vv[k] = c.d(0, 2);
    if (order == 3) {
      jet.phi_uuu[k] = c.d(3, 0);
      jet.phi_uuv[k] = c.d(2, 1);
      jet.phi_uvv[k] = c.d(1, 2);
      jet.phi_vvv[k] = c.d(0, 3);
    }
  }

  if (jet.phi_u.cross(jet.phi_v).norm() <= eps_immersion)
    throw NonImmersedPoint("surface '" + surface.name() + "' is not immersed at (" +
                           format_double(u) + ", " + format_double(v) + ")");
  return jet;
}

FirstFundamentalForm first_form(const ChartJet& jet) {
  FirstFundamentalForm f;
  f.E = jet.phi_u.dot(jet.phi_u);
  f.F = jet.phi_u.dot(jet.phi_v);
  f.G = jet.phi_v.dot(jet.phi_v);
  f.E_u = 2.0 * jet.phi_uu.dot(jet.phi_u);
  f.E_v = 2.0 * jet.phi_uv.dot(jet.phi_u);
  f.F_u = jet.phi_uu.dot(jet.phi_v) + jet.phi_u.dot(jet.phi_uv);
  f.F_v = jet.phi_uv.dot(jet.phi_v) + jet.phi_u.dot(jet.phi_vv);
  f.G_u = 2.0 * jet.phi_uv.dot(jet.phi_v);
  f.G_v = 2.0 * jet.phi_vv.dot(jet.phi_v);
  const double w2 = f.E * f.G - f.F * f.F;
  f.W = w2 > 0.0 ? std::sqrt(w2) : 0.0;
  return f;
}

Vec3 unit_normal(const ChartJet& jet, double eps_immersion) {
  const Vec3 cross = jet.phi_u.cross(jet.phi_v);
  const double norm = cross.norm();
  if (norm <= eps_immersion) throw NonImmersedPoint("unit normal undefined: |phi_u x phi_v| ~ 0");
  return cross / norm;
}

SecondFundamentalForm second_form(const ChartJet& jet, bool flip_orientation,
                                  double eps_immersion) {
  Vec3 n = unit_normal(jet, eps_immersion);
  if (flip_orientation) n = -n;
  return {jet.phi_uu.dot(n), jet.phi_uv.dot(n), jet.phi_vv.dot(n)};
}

ChristoffelSymbols christoffel(const FirstFundamentalForm& form, ChristoffelMode mode,
                               double eps) {
  const double w2 = form.E * form.G - form.F * form.F;
  if (w2 <= eps) throw DegenerateMetric("EG - F^2 = " + format_double(w2));
  const double inv = 1.0 / (2.0 * w2);
  const double E = form.E, F = form.F, G = form.G;
  const double Eu = form.E_u, Ev = form.E_v, Fu = form.F_u, Fv = form.F_v, Gu = form.G_u,
               Gv = form.G_v;

  ChristoffelSymbols c;
  c.g1_11 = inv * (G * Eu + F * (Ev - 2.0 * Fu));
  c.g1_12 = inv * (G * Ev - F * Gu);
  c.g2_12 = inv * (E * Gu - F * Ev);
  c.g1_22 = inv * (G * (2.0 * Fv - Gu) - F * Gv);
  if (mode == ChristoffelMode::Standard) {
    c.g2_11 = inv * (E * (2.0 * Fu - Ev) - F * Eu);
    c.g2_22 = inv * (E * Gv + F * (Gu - 2.0 * Fv));
  } else {
    // as printed in some references: F*Ev instead of F*Eu, and F*Gv
    // instead of F*Gu
    c.g2_11 = inv * (E * (2.0 * Fu - Ev) - F * Ev);
    c.g2_22 = inv * (E * Gv + F * (Gv - 2.0 * Fv));
  }
  return c;
}

}  // namespace isocurve
