#include "isocurve/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "isocurve/util.hpp"

namespace isocurve {

SurfacePair::SurfacePair(SurfaceChartPtr source, SurfaceChartPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!source_ || !target_) throw Error("surface pair requires two charts");
  const Domain& a = source_->domain();
  const Domain& b = target_->domain();
  shared_ = {std::max(a.u_min, b.u_min), std::min(a.u_max, b.u_max),
             std::max(a.v_min, b.v_min), std::min(a.v_max, b.v_max)};
  if (shared_.empty())
    throw Error("surface pair '" + source_->name() + "'/'" + target_->name() +
                "' has an empty shared domain");
}

namespace {

struct GridPoint {
  double u, v;
};

std::vector<GridPoint> make_grid(const Domain& d, GridSpec grid) {
  if (grid.nu < 2 || grid.nv < 2) throw Error("grid must be at least 2x2");
  std::vector<GridPoint> pts;
  pts.reserve(static_cast<std::size_t>(grid.nu) * grid.nv);
  for (int i = 0; i < grid.nu; ++i) {
    const double u = d.u_min + (d.u_max - d.u_min) * static_cast<double>(i) / (grid.nu - 1);
    for (int j = 0; j < grid.nv; ++j) {
      const double v = d.v_min + (d.v_max - d.v_min) * static_cast<double>(j) / (grid.nv - 1);
      pts.push_back({u, v});
    }
  }
  return pts;
}

}  // namespace

IsometryReport check_isometry(const SurfacePair& pair, GridSpec grid, double eps_iso) {
  const auto pts = make_grid(pair.shared_domain(), grid);
  const std::size_t n = pts.size();

  struct PointDevs {
    double e, f, g;
    std::array<double, 6> deriv;
  };
  std::vector<PointDevs> devs(n);

  parallel_for(n, [&](std::size_t i) {
    const ChartJet js = chart_jet(pair.source(), pts[i].u, pts[i].v, 2);
    const ChartJet jt = chart_jet(pair.target(), pts[i].u, pts[i].v, 2);
    const FirstFundamentalForm fs = first_form(js);
    const FirstFundamentalForm ft = first_form(jt);
    devs[i].e = std::abs(fs.E - ft.E);
    devs[i].f = std::abs(fs.F - ft.F);
    devs[i].g = std::abs(fs.G - ft.G);
    devs[i].deriv = {std::abs(fs.E_u - ft.E_u), std::abs(fs.E_v - ft.E_v),
                     std::abs(fs.F_u - ft.F_u), std::abs(fs.F_v - ft.F_v),
                     std::abs(fs.G_u - ft.G_u), std::abs(fs.G_v - ft.G_v)};
  });

  IsometryReport report;
  report.grid = grid;
  report.eps = eps_iso;
  std::vector<double> es(n), fs_(n), gs(n);
  for (std::size_t i = 0; i < n; ++i) {
    es[i] = devs[i].e;
    fs_[i] = devs[i].f;
    gs[i] = devs[i].g;
    report.max_dev_E = std::max(report.max_dev_E, devs[i].e);
    report.max_dev_F = std::max(report.max_dev_F, devs[i].f);
    report.max_dev_G = std::max(report.max_dev_G, devs[i].g);
    for (int k = 0; k < 6; ++k)
      report.max_dev_derivatives[static_cast<std::size_t>(k)] =
          std::max(report.max_dev_derivatives[static_cast<std::size_t>(k)],
                   devs[i].deriv[static_cast<std::size_t>(k)]);
  }
  const double count = static_cast<double>(n);
  report.mean_dev_E = pairwise_sum(es) / count;
  report.mean_dev_F = pairwise_sum(fs_) / count;
  report.mean_dev_G = pairwise_sum(gs) / count;

  const Domain& d = pair.shared_domain();
  report.orientation_sign =
      pushforward(pair, 0.5 * (d.u_min + d.u_max), 0.5 * (d.v_min + d.v_max)).det < 0.0 ? -1 : 1;

  double worst = std::max({report.max_dev_E, report.max_dev_F, report.max_dev_G});
  for (double x : report.max_dev_derivatives) worst = std::max(worst, x);
  report.pass = worst < eps_iso;
  return report;
}

SecondDerivativeIdentityReport check_second_derivative_identities(const SurfacePair& pair,
                                                                  GridSpec grid, double eps) {
  const auto pts = make_grid(pair.shared_domain(), grid);
  const std::size_t n = pts.size();
  std::vector<std::array<double, 6>> devs(n);

  parallel_for(n, [&](std::size_t i) {
    const ChartJet a = chart_jet(pair.source(), pts[i].u, pts[i].v, 2);
    const ChartJet b = chart_jet(pair.target(), pts[i].u, pts[i].v, 2);
    devs[i] = {std::abs(a.phi_uu.dot(a.phi_u) - b.phi_uu.dot(b.phi_u)),
               std::abs(a.phi_uv.dot(a.phi_u) - b.phi_uv.dot(b.phi_u)),
               std::abs(a.phi_vv.dot(a.phi_u) - b.phi_vv.dot(b.phi_u)),
               std::abs(a.phi_uu.dot(a.phi_v) - b.phi_uu.dot(b.phi_v)),
               std::abs(a.phi_uv.dot(a.phi_v) - b.phi_uv.dot(b.phi_v)),
               std::abs(a.phi_vv.dot(a.phi_v) - b.phi_vv.dot(b.phi_v))};
  });

  SecondDerivativeIdentityReport report;
  report.grid = grid;
  report.eps = eps;
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < 6; ++k)
      report.max_dev[static_cast<std::size_t>(k)] = std::max(
          report.max_dev[static_cast<std::size_t>(k)], devs[i][static_cast<std::size_t>(k)]);
  report.max_dev_overall = *std::max_element(report.max_dev.begin(), report.max_dev.end());
  report.pass = report.max_dev_overall < eps;
  return report;
}

PushforwardFrame pushforward(const SurfacePair& pair, double u, double v) {
  const ChartJet a = chart_jet(pair.source(), u, v, 2);
  const ChartJet b = chart_jet(pair.target(), u, v, 2);

  Mat3 basis, image;
  basis.col(0) = a.phi_u;
  basis.col(1) = a.phi_v;
  basis.col(2) = unit_normal(a);
  image.col(0) = b.phi_u;
  image.col(1) = b.phi_v;
  image.col(2) = unit_normal(b);

  const double det_basis = basis.determinant();
  const double scale = basis.colwise().norm().maxCoeff();
  if (std::abs(det_basis) <= 1e-12 * scale * scale * scale)
    throw SingularBasis("frame {phi_u, phi_v, N} is numerically singular at (" +
                        format_double(u) + ", " + format_double(v) + ")");

  PushforwardFrame frame;
  frame.u = u;
  frame.v = v;
  frame.matrix = image * basis.inverse();
  frame.det = frame.matrix.determinant();
  frame.orientation_preserving = frame.det > 0.0;
  return frame;
}

CurveOnSurface transport_curve(const SurfacePair& pair, const CurveOnSurface& curve) {
  if (&curve.host() != &pair.source())
    throw PreconditionError("curve is hosted on '" + curve.host().name() +
                            "', not on the pair source '" + pair.source().name() + "'");
  return curve.rehosted(pair.target_ptr());
}

}  // namespace isocurve
