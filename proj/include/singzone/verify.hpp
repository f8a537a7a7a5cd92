#ifndef SINGZONE_VERIFY_HPP
#define SINGZONE_VERIFY_HPP

// Self-check suites run by `singzone verify`. Each suite draws from its own
// generator seeded from (seed, suite), so filtering does not change results.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "singzone/model.hpp"

namespace singzone {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t samples = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  /// Empty runs every suite.
  std::vector<std::string> suites;
  QuadParams params;
};

const std::vector<std::string>& suite_names();

/// Throws ConfigError on an unknown suite name.
std::vector<SuiteResult> run_verification(const VerifyOptions& options);

void write_verification_report(std::ostream& os, const std::vector<SuiteResult>& results);

/// |a - b| / max(|a|, |b|, floor), zero when all vanish.
double relative_error(double a, double b, double floor = 0.0);

/// k-th time derivative (k = 1..4) of state component `index` along the drift
/// flow through s, by Richardson-extrapolated central differences on a
/// fine-step RK4 trajectory.
double drift_flow_derivative_fd(const State14& s, const QuadParams& p, Eigen::Index index, int k,
                                double h = 0.02);

/// Observed order of accuracy of rk4_step from three step halvings on [0, 1].
double rk4_convergence_slope(const State14& s, const VirtualInput& u, const QuadParams& p);

}  // namespace singzone

#endif  // SINGZONE_VERIFY_HPP
