#ifndef ISOCURVE_VERSION_HPP
#define ISOCURVE_VERSION_HPP

namespace isocurve {

inline constexpr const char* kToolName = "isocurve";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace isocurve

#endif  // ISOCURVE_VERSION_HPP
