#include "isocurve/config.hpp"

#include <atomic>

namespace isocurve {

namespace {
std::atomic<double> g_eps_immersion{kEpsImmersion};
std::atomic<double> g_eps_kappa{kEpsKappa};
std::atomic<double> g_eps_speed{kEpsSpeed};
std::atomic<double> g_eps_class_rel{kEpsClassRel};
}  // namespace

double default_eps_immersion() noexcept { return g_eps_immersion.load(); }
double default_eps_kappa() noexcept { return g_eps_kappa.load(); }
double default_eps_speed() noexcept { return g_eps_speed.load(); }
double default_eps_class_rel() noexcept { return g_eps_class_rel.load(); }

void set_default_eps_immersion(double eps) noexcept { g_eps_immersion.store(eps); }
void set_default_eps_kappa(double eps) noexcept { g_eps_kappa.store(eps); }
void set_default_eps_speed(double eps) noexcept { g_eps_speed.store(eps); }
void set_default_eps_class_rel(double eps) noexcept { g_eps_class_rel.store(eps); }

}  // namespace isocurve
