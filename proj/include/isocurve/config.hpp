#ifndef ISOCURVE_CONFIG_HPP
#define ISOCURVE_CONFIG_HPP

namespace isocurve {

inline constexpr double kEpsImmersion = 1e-10;
inline constexpr double kEpsKappa = 1e-9;
inline constexpr double kEpsSpeed = 1e-6;
inline constexpr double kEpsClassRel = 1e-7;
inline constexpr double kMinSpeed = 1e-8;
inline constexpr double kEpsDegenerateMetric = 1e-20;  // threshold on W^2

// Process-wide default thresholds, used by the defaulted parameters of the
// geometry operations. Intended to be set once at startup (the CLI wires
// them to flags); not meant to change concurrently with computation.
double default_eps_immersion() noexcept;
double default_eps_kappa() noexcept;
double default_eps_speed() noexcept;
double default_eps_class_rel() noexcept;

void set_default_eps_immersion(double eps) noexcept;
void set_default_eps_kappa(double eps) noexcept;
void set_default_eps_speed(double eps) noexcept;
void set_default_eps_class_rel(double eps) noexcept;

}  // namespace isocurve

#endif  // ISOCURVE_CONFIG_HPP
