#ifndef ISOCURVE_UTIL_HPP
#define ISOCURVE_UTIL_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace isocurve {

/// Shortest round-trip decimal representation of a double (std::to_chars).
/// Deterministic across runs and platforms; used for all text output.
std::string format_double(double x);

/// FNV-1a 64-bit hash, hex encoded. Used to fingerprint scene files.
std::string fnv1a_hex(std::string_view bytes);

/// Sum with a fixed-order pairwise reduction; result is independent of
/// thread count and stable across runs.
double pairwise_sum(const std::vector<double>& values);

/// Number of worker threads: hardware concurrency capped by the
/// ISOCURVE_THREADS environment variable (>=1).
int thread_budget();

/// Runs fn(i) for i in [0, n). Work is split across thread_budget() threads;
/// callers must write results into index-addressed storage so that the
/// outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace isocurve

#endif  // ISOCURVE_UTIL_HPP
