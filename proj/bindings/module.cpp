// Python bindings for the main operations: expressions and jets, charts and
// fundamental forms, curves and their Frenet apparatus, isometric pairs, the
// deviation-identity checks, and scene-driven runs.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isocurve/runner.hpp"
#include "isocurve/util.hpp"
#include "isocurve/version.hpp"

namespace py = pybind11;
using namespace isocurve;

namespace {

Jet jet2(const ExpressionAst& ast, double u, double v, int order) {
  return eval_jet(ast, {{"u", Jet::variable(u, 0, 2, order)},
                        {"v", Jet::variable(v, 1, 2, order)}});
}

Jet jet1(const ExpressionAst& ast, const std::string& name, double s, int order) {
  return eval_jet(ast, {{name, Jet::variable(s, 0, 1, order)}});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "differential geometry of curves on parametric surfaces";
  m.attr("__version__") = kVersion;

  static py::exception<Error> base_error(m, "Error");
  py::register_exception<SyntaxError>(m, "SyntaxError", base_error);
  py::register_exception<UnknownIdentifier>(m, "UnknownIdentifier", base_error);
  py::register_exception<DomainError>(m, "DomainError", base_error);
  py::register_exception<DomainViolation>(m, "DomainViolation", base_error);
  py::register_exception<NonImmersedPoint>(m, "NonImmersedPoint", base_error);
  py::register_exception<DegenerateMetric>(m, "DegenerateMetric", base_error);
  py::register_exception<VanishingCurvature>(m, "VanishingCurvature", base_error);
  py::register_exception<SingularSpeed>(m, "SingularSpeed", base_error);
  py::register_exception<NotANormalCurve>(m, "NotANormalCurve", base_error);
  py::register_exception<SingularBasis>(m, "SingularBasis", base_error);
  py::register_exception<HypothesisNotMet>(m, "HypothesisNotMet", base_error);
  py::register_exception<ParseError>(m, "ParseError", base_error);
  py::register_exception<UnresolvedReference>(m, "UnresolvedReference", base_error);
  py::register_exception<DuplicateName>(m, "DuplicateName", base_error);
  py::register_exception<PreconditionError>(m, "PreconditionError", base_error);

  // ---- expressions and jets
  py::class_<Jet>(m, "Jet")
      .def_static("constant", &Jet::constant, py::arg("value"), py::arg("arity"),
                  py::arg("order"))
      .def_static("variable", &Jet::variable, py::arg("value"), py::arg("index"),
                  py::arg("arity"), py::arg("order"))
      .def_property_readonly("arity", &Jet::arity)
      .def_property_readonly("order", &Jet::order)
      .def_property_readonly("value", &Jet::value)
      .def("d", &Jet::d, py::arg("i"), py::arg("j") = 0)
      .def("__repr__", [](const Jet& j) {
        return "<Jet value=" + format_double(j.value()) + " arity=" +
               std::to_string(j.arity()) + " order=" + std::to_string(j.order()) + ">";
      });

  py::class_<ExpressionAst>(m, "Expression")
      .def_property_readonly("variables", &ExpressionAst::variables)
      .def("pretty", &ExpressionAst::pretty)
      .def("__str__", &ExpressionAst::pretty)
      .def("__eq__", [](const ExpressionAst& a, const ExpressionAst& b) { return a == b; })
      .def("eval",
           [](const ExpressionAst& ast, const std::map<std::string, double>& bindings) {
             return eval_scalar(ast, bindings);
           },
           py::arg("bindings"))
      .def("jet2", &jet2, py::arg("u"), py::arg("v"), py::arg("order") = 3)
      .def("jet1", &jet1, py::arg("name"), py::arg("s"), py::arg("order") = 3);

  m.def("parse", &parse, py::arg("text"), py::arg("variables"));

  // ---- surfaces
  py::class_<Domain>(m, "Domain")
      .def(py::init([](double u_min, double u_max, double v_min, double v_max) {
             return Domain{u_min, u_max, v_min, v_max};
           }),
           py::arg("u_min"), py::arg("u_max"), py::arg("v_min"), py::arg("v_max"))
      .def_readonly("u_min", &Domain::u_min)
      .def_readonly("u_max", &Domain::u_max)
      .def_readonly("v_min", &Domain::v_min)
      .def_readonly("v_max", &Domain::v_max)
      .def("contains", &Domain::contains);

  py::class_<SurfaceChart, std::shared_ptr<SurfaceChart>>(m, "SurfaceChart")
      .def(py::init([](const std::string& name, const std::string& x, const std::string& y,
                       const std::string& z, const Domain& d) {
             return std::make_shared<SurfaceChart>(name, parse(x, {"u", "v"}),
                                                   parse(y, {"u", "v"}), parse(z, {"u", "v"}),
                                                   d);
           }),
           py::arg("name"), py::arg("x"), py::arg("y"), py::arg("z"), py::arg("domain"))
      .def_property_readonly("name", &SurfaceChart::name)
      .def_property_readonly("domain", &SurfaceChart::domain);

  py::class_<ChartJet>(m, "ChartJet")
      .def_readonly("u", &ChartJet::u)
      .def_readonly("v", &ChartJet::v)
      .def_readonly("order", &ChartJet::order)
      .def_readonly("position", &ChartJet::position)
      .def_readonly("phi_u", &ChartJet::phi_u)
      .def_readonly("phi_v", &ChartJet::phi_v)
      .def_readonly("phi_uu", &ChartJet::phi_uu)
      .def_readonly("phi_uv", &ChartJet::phi_uv)
      .def_readonly("phi_vv", &ChartJet::phi_vv)
      .def_readonly("phi_uuu", &ChartJet::phi_uuu)
      .def_readonly("phi_uuv", &ChartJet::phi_uuv)
      .def_readonly("phi_uvv", &ChartJet::phi_uvv)
      .def_readonly("phi_vvv", &ChartJet::phi_vvv);

  py::class_<FirstFundamentalForm>(m, "FirstFundamentalForm")
      .def_readonly("E", &FirstFundamentalForm::E)
      .def_readonly("F", &FirstFundamentalForm::F)
      .def_readonly("G", &FirstFundamentalForm::G)
      .def_readonly("E_u", &FirstFundamentalForm::E_u)
      .def_readonly("E_v", &FirstFundamentalForm::E_v)
      .def_readonly("F_u", &FirstFundamentalForm::F_u)
      .def_readonly("F_v", &FirstFundamentalForm::F_v)
      .def_readonly("G_u", &FirstFundamentalForm::G_u)
      .def_readonly("G_v", &FirstFundamentalForm::G_v)
      .def_readonly("W", &FirstFundamentalForm::W);

  py::class_<SecondFundamentalForm>(m, "SecondFundamentalForm")
      .def_readonly("L", &SecondFundamentalForm::L)
      .def_readonly("M", &SecondFundamentalForm::M)
      .def_readonly("N", &SecondFundamentalForm::N);

  py::class_<ChristoffelSymbols>(m, "ChristoffelSymbols")
      .def_readonly("g1_11", &ChristoffelSymbols::g1_11)
      .def_readonly("g2_11", &ChristoffelSymbols::g2_11)
      .def_readonly("g1_12", &ChristoffelSymbols::g1_12)
      .def_readonly("g2_12", &ChristoffelSymbols::g2_12)
      .def_readonly("g1_22", &ChristoffelSymbols::g1_22)
      .def_readonly("g2_22", &ChristoffelSymbols::g2_22);

  py::enum_<ChristoffelMode>(m, "ChristoffelMode")
      .value("Standard", ChristoffelMode::Standard)
      .value("PaperLiteral", ChristoffelMode::PaperLiteral);

  m.def("chart_jet",
        [](const SurfaceChart& s, double u, double v, int order, double eps) {
          return chart_jet(s, u, v, order, eps);
        },
        py::arg("surface"), py::arg("u"), py::arg("v"), py::arg("order") = 3,
        py::arg("eps_immersion") = kEpsImmersion);
  m.def("first_form", &first_form, py::arg("jet"));
  m.def("unit_normal",
        [](const ChartJet& j, double eps) { return unit_normal(j, eps); }, py::arg("jet"),
        py::arg("eps_immersion") = kEpsImmersion);
  m.def("second_form",
        [](const ChartJet& j, bool flip, double eps) { return second_form(j, flip, eps); },
        py::arg("jet"), py::arg("flip_orientation") = false,
        py::arg("eps_immersion") = kEpsImmersion);
  m.def("christoffel",
        [](const FirstFundamentalForm& f, ChristoffelMode mode, double eps) {
          return christoffel(f, mode, eps);
        },
        py::arg("form"), py::arg("mode") = ChristoffelMode::Standard,
        py::arg("eps") = kEpsDegenerateMetric);

  // ---- curves
  py::class_<Interval>(m, "Interval")
      .def(py::init([](double s0, double s1) { return Interval{s0, s1}; }), py::arg("s0"),
           py::arg("s1"))
      .def_readonly("s0", &Interval::s0)
      .def_readonly("s1", &Interval::s1)
      .def("length", &Interval::length);

  py::class_<CurveOnSurface, std::shared_ptr<CurveOnSurface>>(m, "CurveOnSurface")
      .def(py::init([](std::shared_ptr<SurfaceChart> host, const std::string& u,
                       const std::string& v, const std::string& param,
                       const Interval& interval, bool unit_speed, const Vec3& origin) {
             return std::make_shared<CurveOnSurface>(std::move(host), parse(u, {param}),
                                                     parse(v, {param}), param, interval,
                                                     unit_speed, origin);
           }),
           py::arg("host"), py::arg("u"), py::arg("v"), py::arg("param") = "s",
           py::arg("interval") = Interval{0.0, 1.0}, py::arg("unit_speed") = false,
           py::arg("origin") = Vec3(Vec3::Zero()))
      .def_property_readonly("interval", &CurveOnSurface::interval)
      .def_property_readonly("unit_speed", &CurveOnSurface::unit_speed)
      .def_property_readonly("origin", &CurveOnSurface::origin)
      .def_property_readonly("is_arc_length", &CurveOnSurface::is_arc_length)
      .def_property_readonly("host", [](const CurveOnSurface& c) {
        return std::const_pointer_cast<SurfaceChart>(c.host_ptr());
      })
      .def("with_origin", &CurveOnSurface::with_origin, py::arg("origin"));

  py::class_<CurveJet>(m, "CurveJet")
      .def_readonly("s", &CurveJet::s)
      .def_readonly("order", &CurveJet::order)
      .def_readonly("position", &CurveJet::position)
      .def_readonly("d1", &CurveJet::d1)
      .def_readonly("d2", &CurveJet::d2)
      .def_readonly("d3", &CurveJet::d3);

  py::class_<FrenetApparatus>(m, "FrenetApparatus")
      .def_readonly("s", &FrenetApparatus::s)
      .def_readonly("t", &FrenetApparatus::t)
      .def_readonly("n", &FrenetApparatus::n)
      .def_readonly("b", &FrenetApparatus::b)
      .def_readonly("kappa", &FrenetApparatus::kappa)
      .def_readonly("tau", &FrenetApparatus::tau);

  py::class_<SpeedReport>(m, "SpeedReport")
      .def_readonly("samples", &SpeedReport::samples)
      .def_readonly("max_deviation", &SpeedReport::max_deviation)
      .def_readonly("eps", &SpeedReport::eps)
      .def_readonly("pass_", &SpeedReport::pass);

  py::enum_<NormalCurvatureRoute>(m, "NormalCurvatureRoute")
      .value("FundamentalForms", NormalCurvatureRoute::FundamentalForms)
      .value("Acceleration", NormalCurvatureRoute::Acceleration);

  py::enum_<GeodesicCurvatureMode>(m, "GeodesicCurvatureMode")
      .value("Beltrami", GeodesicCurvatureMode::Beltrami)
      .value("Extrinsic", GeodesicCurvatureMode::Extrinsic);

  py::enum_<PositionClass>(m, "PositionClass")
      .value("Normal", PositionClass::Normal)
      .value("Osculating", PositionClass::Osculating)
      .value("Rectifying", PositionClass::Rectifying)
      .value("General", PositionClass::General);

  py::class_<PositionClassification>(m, "PositionClassification")
      .def_readonly("cls", &PositionClassification::cls)
      .def_readonly("delta", &PositionClassification::delta)
      .def_readonly("lambda_", &PositionClassification::lambda)
      .def_readonly("mu", &PositionClassification::mu)
      .def_readonly("eps_used", &PositionClassification::eps_used);

  py::class_<NormalDecomposition>(m, "NormalDecomposition")
      .def_readonly("lambda_", &NormalDecomposition::lambda)
      .def_readonly("mu", &NormalDecomposition::mu)
      .def_readonly("reconstruction_error", &NormalDecomposition::reconstruction_error);

  py::class_<CurveScalars>(m, "CurveScalars")
      .def_readonly("s", &CurveScalars::s)
      .def_readonly("kappa", &CurveScalars::kappa)
      .def_readonly("tau", &CurveScalars::tau)
      .def_readonly("kappa_n", &CurveScalars::kappa_n)
      .def_readonly("kappa_g", &CurveScalars::kappa_g)
      .def_readonly("lambda_", &CurveScalars::lambda)
      .def_readonly("mu", &CurveScalars::mu)
      .def_readonly("delta", &CurveScalars::delta);

  m.def("curve_jet",
        [](const CurveOnSurface& c, double s, int order) { return curve_jet(c, s, order); },
        py::arg("curve"), py::arg("s"), py::arg("order") = 3);
  m.def("speed", &speed, py::arg("curve"), py::arg("s"));
  m.def("assert_unit_speed",
        [](const CurveOnSurface& c, int samples, double eps) {
          return assert_unit_speed(c, samples, eps);
        },
        py::arg("curve"), py::arg("samples") = 64, py::arg("eps_speed") = kEpsSpeed);
  m.def("reparameterize_by_arc_length",
        [](const CurveOnSurface& c, double rk_tol, double min_speed) {
          return reparameterize_by_arc_length(c, rk_tol, min_speed);
        },
        py::arg("curve"), py::arg("rk_tol") = 1e-12, py::arg("min_speed") = kMinSpeed);
  m.def("frenet",
        [](const CurveOnSurface& c, double s, double eps) { return frenet(c, s, eps); },
        py::arg("curve"), py::arg("s"), py::arg("eps_kappa") = kEpsKappa);
  m.def("normal_curvature",
        [](const CurveOnSurface& c, double s, NormalCurvatureRoute route, bool flip) {
          return normal_curvature(c, s, route, flip);
        },
        py::arg("curve"), py::arg("s"),
        py::arg("route") = NormalCurvatureRoute::FundamentalForms,
        py::arg("flip_orientation") = false);
  m.def("geodesic_curvature",
        [](const CurveOnSurface& c, double s, GeodesicCurvatureMode mode, bool flip) {
          return geodesic_curvature(c, s, mode, flip);
        },
        py::arg("curve"), py::arg("s"), py::arg("mode") = GeodesicCurvatureMode::Beltrami,
        py::arg("flip_orientation") = false);
  m.def("classify_position",
        [](const CurveOnSurface& c, double s, double eps) {
          return classify_position(c, s, eps);
        },
        py::arg("curve"), py::arg("s"), py::arg("eps_class_rel") = kEpsClassRel);
  m.def("normal_decomposition",
        [](const CurveOnSurface& c, double s, double eps) {
          return normal_decomposition(c, s, eps);
        },
        py::arg("curve"), py::arg("s"), py::arg("eps_class_rel") = kEpsClassRel);
  m.def("curve_scalars", &curve_scalars, py::arg("curve"), py::arg("s"));

  // ---- isometry
  py::class_<SurfacePair, std::shared_ptr<SurfacePair>>(m, "SurfacePair")
      .def(py::init([](std::shared_ptr<SurfaceChart> source,
                       std::shared_ptr<SurfaceChart> target) {
             return std::make_shared<SurfacePair>(std::move(source), std::move(target));
           }),
           py::arg("source"), py::arg("target"))
      .def_property_readonly("shared_domain", &SurfacePair::shared_domain)
      .def_property_readonly("source", [](const SurfacePair& p) {
        return std::const_pointer_cast<SurfaceChart>(p.source_ptr());
      })
      .def_property_readonly("target", [](const SurfacePair& p) {
        return std::const_pointer_cast<SurfaceChart>(p.target_ptr());
      });

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](int nu, int nv) { return GridSpec{nu, nv}; }), py::arg("nu") = 50,
           py::arg("nv") = 50)
      .def_readonly("nu", &GridSpec::nu)
      .def_readonly("nv", &GridSpec::nv);

  py::class_<IsometryReport>(m, "IsometryReport")
      .def_readonly("max_dev_E", &IsometryReport::max_dev_E)
      .def_readonly("max_dev_F", &IsometryReport::max_dev_F)
      .def_readonly("max_dev_G", &IsometryReport::max_dev_G)
      .def_readonly("mean_dev_E", &IsometryReport::mean_dev_E)
      .def_readonly("mean_dev_F", &IsometryReport::mean_dev_F)
      .def_readonly("mean_dev_G", &IsometryReport::mean_dev_G)
      .def_readonly("max_dev_derivatives", &IsometryReport::max_dev_derivatives)
      .def_readonly("orientation_sign", &IsometryReport::orientation_sign)
      .def_readonly("eps", &IsometryReport::eps)
      .def_readonly("pass_", &IsometryReport::pass);

  py::class_<SecondDerivativeIdentityReport>(m, "SecondDerivativeIdentityReport")
      .def_readonly("max_dev", &SecondDerivativeIdentityReport::max_dev)
      .def_readonly("max_dev_overall", &SecondDerivativeIdentityReport::max_dev_overall)
      .def_readonly("eps", &SecondDerivativeIdentityReport::eps)
      .def_readonly("pass_", &SecondDerivativeIdentityReport::pass);

  py::class_<PushforwardFrame>(m, "PushforwardFrame")
      .def_readonly("u", &PushforwardFrame::u)
      .def_readonly("v", &PushforwardFrame::v)
      .def_readonly("matrix", &PushforwardFrame::matrix)
      .def_readonly("det", &PushforwardFrame::det)
      .def_readonly("orientation_preserving", &PushforwardFrame::orientation_preserving);

  m.def("check_isometry",
        [](const SurfacePair& p, const GridSpec& g, double eps) {
          return check_isometry(p, g, eps);
        },
        py::arg("pair"), py::arg("grid") = GridSpec{50, 50}, py::arg("eps_iso") = kEpsIso);
  m.def("check_second_derivative_identities",
        [](const SurfacePair& p, const GridSpec& g, double eps) {
          return check_second_derivative_identities(p, g, eps);
        },
        py::arg("pair"), py::arg("grid") = GridSpec{50, 50}, py::arg("eps") = kEpsIso);
  m.def("pushforward", &pushforward, py::arg("pair"), py::arg("u"), py::arg("v"));
  m.def("transport_curve", &transport_curve, py::arg("pair"), py::arg("curve"));

  // ---- theorem checks
  py::enum_<DeviationMode>(m, "DeviationMode")
      .value("PaperExpansion", DeviationMode::PaperExpansion)
      .value("DirectTransport", DeviationMode::DirectTransport);

  py::enum_<NormalConvention>(m, "NormalConvention")
      .value("UnitNormal", NormalConvention::UnitNormal)
      .value("UnnormalizedCross", NormalConvention::UnnormalizedCross);

  py::enum_<DeviationTheorem>(m, "DeviationTheorem")
      .value("Tangential", DeviationTheorem::Tangential)
      .value("NormalComponent", DeviationTheorem::NormalComponent)
      .value("CrossComponent", DeviationTheorem::CrossComponent);

  py::class_<TheoremOptions>(m, "TheoremOptions")
      .def(py::init<>())
      .def_readwrite("tol", &TheoremOptions::tol)
      .def_readwrite("flip_target_orientation", &TheoremOptions::flip_target_orientation)
      .def_readwrite("normal_convention", &TheoremOptions::normal_convention)
      .def_readwrite("eps_class_rel", &TheoremOptions::eps_class_rel)
      .def_readwrite("eps_kappa", &TheoremOptions::eps_kappa)
      .def_readwrite("fd_step", &TheoremOptions::fd_step);

  py::class_<DeviationSample>(m, "DeviationSample")
      .def_readonly("s", &DeviationSample::s)
      .def_readonly("lhs", &DeviationSample::lhs)
      .def_readonly("rhs", &DeviationSample::rhs)
      .def_readonly("residual", &DeviationSample::residual)
      .def_readonly("mode", &DeviationSample::mode);

  py::class_<DeviationReport>(m, "DeviationReport")
      .def_readonly("theorem_id", &DeviationReport::theorem_id)
      .def_readonly("curve_id", &DeviationReport::curve_id)
      .def_readonly("pair_id", &DeviationReport::pair_id)
      .def_readonly("a", &DeviationReport::a)
      .def_readonly("b", &DeviationReport::b)
      .def_readonly("mode", &DeviationReport::mode)
      .def_readonly("asserted", &DeviationReport::asserted)
      .def_readonly("samples", &DeviationReport::samples)
      .def_readonly("max_abs_residual", &DeviationReport::max_abs_residual)
      .def_readonly("tol", &DeviationReport::tol)
      .def_readonly("pass_", &DeviationReport::pass);

  py::class_<Theorem31Sample>(m, "Theorem31Sample")
      .def_readonly("s", &Theorem31Sample::s)
      .def_readonly("tangency", &Theorem31Sample::tangency)
      .def_readonly("correction_norm", &Theorem31Sample::correction_norm);

  py::class_<Theorem31Report>(m, "Theorem31Report")
      .def_readonly("samples", &Theorem31Report::samples)
      .def_readonly("max_abs_tangency", &Theorem31Report::max_abs_tangency)
      .def_readonly("max_correction", &Theorem31Report::max_correction)
      .def_readonly("tol", &Theorem31Report::tol)
      .def_readonly("pass_", &Theorem31Report::pass);

  py::class_<AsymptoticSample>(m, "AsymptoticSample")
      .def_readonly("s", &AsymptoticSample::s)
      .def_readonly("kn_source", &AsymptoticSample::kn_source)
      .def_readonly("kn_target", &AsymptoticSample::kn_target);

  py::class_<AsymptoticReport>(m, "AsymptoticReport")
      .def_readonly("samples", &AsymptoticReport::samples)
      .def_readonly("max_abs_difference", &AsymptoticReport::max_abs_difference)
      .def_readonly("hypothesis_met", &AsymptoticReport::hypothesis_met)
      .def_readonly("source_asymptotic", &AsymptoticReport::source_asymptotic)
      .def_readonly("target_asymptotic", &AsymptoticReport::target_asymptotic)
      .def_readonly("equivalent", &AsymptoticReport::equivalent)
      .def_readonly("eps", &AsymptoticReport::eps)
      .def_readonly("pass_", &AsymptoticReport::pass);

  py::class_<GeodesicInvarianceSample>(m, "GeodesicInvarianceSample")
      .def_readonly("s", &GeodesicInvarianceSample::s)
      .def_readonly("kg_source", &GeodesicInvarianceSample::kg_source)
      .def_readonly("kg_target", &GeodesicInvarianceSample::kg_target);

  py::class_<GeodesicInvarianceReport>(m, "GeodesicInvarianceReport")
      .def_readonly("samples", &GeodesicInvarianceReport::samples)
      .def_readonly("max_abs_difference", &GeodesicInvarianceReport::max_abs_difference)
      .def_readonly("tol", &GeodesicInvarianceReport::tol)
      .def_readonly("pass_", &GeodesicInvarianceReport::pass);

  m.def("paper_alpha_bar",
        [](const SurfacePair& p, const CurveOnSurface& c, double s, const TheoremOptions& o) {
          return paper_alpha_bar(p, c, s, o);
        },
        py::arg("pair"), py::arg("curve"), py::arg("s"),
        py::arg("options") = TheoremOptions{});
  m.def("theorem31_check",
        [](const SurfacePair& p, const CurveOnSurface& c, int n, const TheoremOptions& o) {
          return theorem31_check(p, c, n, o);
        },
        py::arg("pair"), py::arg("curve"), py::arg("samples") = 100,
        py::arg("options") = TheoremOptions{});
  m.def("tangential_deviation",
        [](const SurfacePair& p, const CurveOnSurface& c, double a, double b, double s,
           DeviationMode mode, const TheoremOptions& o) {
          return tangential_deviation(p, c, a, b, s, mode, o);
        },
        py::arg("pair"), py::arg("curve"), py::arg("a"), py::arg("b"), py::arg("s"),
        py::arg("mode") = DeviationMode::PaperExpansion,
        py::arg("options") = TheoremOptions{});
  m.def("normal_component_deviation",
        [](const SurfacePair& p, const CurveOnSurface& c, double s, DeviationMode mode,
           const TheoremOptions& o) { return normal_component_deviation(p, c, s, mode, o); },
        py::arg("pair"), py::arg("curve"), py::arg("s"),
        py::arg("mode") = DeviationMode::PaperExpansion,
        py::arg("options") = TheoremOptions{});
  m.def("cross_component_deviation",
        [](const SurfacePair& p, const CurveOnSurface& c, double a, double b, double s,
           DeviationMode mode, const TheoremOptions& o) {
          return cross_component_deviation(p, c, a, b, s, mode, o);
        },
        py::arg("pair"), py::arg("curve"), py::arg("a"), py::arg("b"), py::arg("s"),
        py::arg("mode") = DeviationMode::PaperExpansion,
        py::arg("options") = TheoremOptions{});
  m.def("deviation_sweep",
        [](const SurfacePair& p, const CurveOnSurface& c, DeviationTheorem theorem, double a,
           double b, int samples, DeviationMode mode, const TheoremOptions& o) {
          return deviation_sweep(p, c, theorem, a, b, samples, mode, o);
        },
        py::arg("pair"), py::arg("curve"), py::arg("theorem"), py::arg("a") = 1.0,
        py::arg("b") = 0.0, py::arg("samples") = 100,
        py::arg("mode") = DeviationMode::PaperExpansion,
        py::arg("options") = TheoremOptions{});
  m.def("deviation_rhs_tangential", &deviation_rhs_tangential);
  m.def("deviation_rhs_normal", &deviation_rhs_normal);
  m.def("deviation_rhs_cross", &deviation_rhs_cross);
  m.def("asymptotic_equivalence_check",
        [](const SurfacePair& p, const CurveOnSurface& c, int samples, const TheoremOptions& o,
           bool allow) { return asymptotic_equivalence_check(p, c, samples, o, allow); },
        py::arg("pair"), py::arg("curve"), py::arg("samples") = 100,
        py::arg("options") = TheoremOptions{}, py::arg("allow_hypothesis_failure") = false);
  m.def("geodesic_invariance_check",
        [](const SurfacePair& p, const CurveOnSurface& c, int samples,
           const TheoremOptions& o) { return geodesic_invariance_check(p, c, samples, o); },
        py::arg("pair"), py::arg("curve"), py::arg("samples") = 100,
        py::arg("options") = TheoremOptions{});

  // ---- scenes and the runner
  py::class_<SceneFile>(m, "SceneFile")
      .def_property_readonly("surface_names", &SceneFile::surface_names)
      .def_property_readonly("curve_names", &SceneFile::curve_names)
      .def_property_readonly("pair_names", &SceneFile::pair_names)
      .def_property_readonly("label", &SceneFile::label)
      .def_property_readonly("hash", &SceneFile::hash)
      .def("surface",
           [](const SceneFile& s, const std::string& name) {
             return std::const_pointer_cast<SurfaceChart>(s.surface(name));
           },
           py::arg("name"))
      .def("curve",
           [](const SceneFile& s, const std::string& name) {
             return std::const_pointer_cast<CurveOnSurface>(s.curve(name));
           },
           py::arg("name"))
      .def("pair",
           [](const SceneFile& s, const std::string& name) {
             return std::const_pointer_cast<SurfacePair>(s.pair(name));
           },
           py::arg("name"));

  m.def("load_scene", &load_scene, py::arg("path"));
  m.def("parse_scene", &parse_scene, py::arg("text"), py::arg("label") = "<memory>");

  py::class_<TaskResult>(m, "TaskResult")
      .def_readonly("name", &TaskResult::name)
      .def_readonly("command", &TaskResult::command)
      .def_readonly("pass_", &TaskResult::pass)
      .def_readonly("asserted", &TaskResult::asserted)
      .def_readonly("error", &TaskResult::error)
      .def_property_readonly("payload",
                             [](const TaskResult& t) { return t.payload.dump(2); });

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("version", &RunReport::version)
      .def_readonly("scene_hash", &RunReport::scene_hash)
      .def_readonly("command", &RunReport::command)
      .def_readonly("tasks", &RunReport::tasks)
      .def_readonly("pass_", &RunReport::pass)
      .def("to_json", [](const RunReport& r) { return serialize_json(r); })
      .def("to_csv", [](const RunReport& r) { return serialize_csv(r); });

  m.def("run_scene",
        [](const SceneFile& scene, const std::string& command) {
          return run(scene, command, RunOptions{});
        },
        py::arg("scene"), py::arg("command") = "run");
}
