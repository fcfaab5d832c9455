#ifndef ISOCURVE_ISOMETRY_HPP
#define ISOCURVE_ISOMETRY_HPP

#include <array>

#include "isocurve/curve.hpp"
#include "isocurve/surface.hpp"

namespace isocurve {

inline constexpr double kEpsIso = 1e-9;

/// Two charts over a shared (u,v) domain; the correspondence phi(u,v) ->
/// phi_bar(u,v) is the candidate isometry. The shared domain is the
/// intersection of the two chart domains.
class SurfacePair {
 public:
  SurfacePair(SurfaceChartPtr source, SurfaceChartPtr target);

  const SurfaceChart& source() const noexcept { return *source_; }
  const SurfaceChart& target() const noexcept { return *target_; }
  const SurfaceChartPtr& source_ptr() const noexcept { return source_; }
  const SurfaceChartPtr& target_ptr() const noexcept { return target_; }
  const Domain& shared_domain() const noexcept { return shared_; }

 private:
  SurfaceChartPtr source_, target_;
  Domain shared_;
};

struct GridSpec {
  int nu = 50, nv = 50;
};

struct IsometryReport {
  GridSpec grid;
  double max_dev_E = 0.0, max_dev_F = 0.0, max_dev_G = 0.0;
  double mean_dev_E = 0.0, mean_dev_F = 0.0, mean_dev_G = 0.0;
  // deviations of the first-form derivatives, order: E_u E_v F_u F_v G_u G_v
  std::array<double, 6> max_dev_derivatives{};
  int orientation_sign = 1;  // sign(det) of the pushforward at the domain center
  double eps = kEpsIso;
  bool pass = false;
};

/// Verifies E = E_bar, F = F_bar, G = G_bar and the six derivative
/// identities on an (nu x nv) grid over the shared domain. All derivatives
/// come from jet evaluation, not finite differences.
IsometryReport check_isometry(const SurfacePair& pair, GridSpec grid, double eps_iso = kEpsIso);

struct SecondDerivativeIdentityReport {
  GridSpec grid;
  // order: uu.u, uv.u, vv.u, uu.v, uv.v, vv.v
  std::array<double, 6> max_dev{};
  double max_dev_overall = 0.0;
  double eps = kEpsIso;
  bool pass = false;
};

/// Checks phi_bar_ab . phi_bar_c = phi_ab . phi_c for the six second-order
/// dot products. Runs in diagnostic mode on any pair: deviations are
/// reported even when the pair is not isometric.
SecondDerivativeIdentityReport check_second_derivative_identities(const SurfacePair& pair,
                                                                  GridSpec grid,
                                                                  double eps = kEpsIso);

struct PushforwardFrame {
  double u = 0.0, v = 0.0;
  Mat3 matrix = Mat3::Identity();  // sends {phi_u, phi_v, N} to the barred frame
  double det = 1.0;
  bool orientation_preserving = true;
};

/// 3x3 matrix solving the frame correspondence at one point.
/// Throws SingularBasis when {phi_u, phi_v, N} cannot be inverted.
PushforwardFrame pushforward(const SurfacePair& pair, double u, double v);

/// The honest image J(alpha): the same coordinate functions re-hosted on the
/// target chart. Throws PreconditionError when the curve is not hosted on the
/// pair's source, DomainViolation when it leaves the shared domain.
CurveOnSurface transport_curve(const SurfacePair& pair, const CurveOnSurface& curve);

}  // namespace isocurve

#endif  // ISOCURVE_ISOMETRY_HPP
