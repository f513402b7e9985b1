#pragma once

// One diagnostic run over a representation, assembled into a JSON report.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "anosovlab/diagnostics.hpp"

namespace anosovlab {

/// Check groups selectable with `--checks`.
const std::vector<std::string>& check_groups();

struct RunConfig {
  int radius = 6;      // gap-profile ball radius (<= 10)
  int triples = 500;
  int samples = 64;
  std::uint64_t seed = 42;
  /// Subset of check_groups(); empty selects everything.
  std::vector<std::string> checks;
  /// Keep every (length, log_ratio) point in the gap profiles.
  bool with_points = false;
  Tolerances tol = default_tolerances();

  void validate() const;
};

struct Report {
  nlohmann::json json;
  std::vector<CheckResult> checks;  // sorted by name
  std::vector<GapProfile> gap_profiles;
  /// Every non-skipped check passed.
  bool pass = false;
  std::vector<std::string> failing;
};

/// Boundary distance and threshold of the y -> x and y -> z limit checks.
inline constexpr double limit_distance = 1e-3;
inline constexpr double limit_threshold = 1e-3;

/// (theta_x, theta_z) pairs used by the limit and psi checks: theta_x on an
/// 8-point grid, arcs of 1/8 to 7/8 of the circle.
std::vector<std::pair<double, double>> limit_configurations();

Report run_diagnostics(const Representation& rep, const RunConfig& config);

/// Copy of a report without the fields that vary between identical runs.
nlohmann::json strip_volatile(const nlohmann::json& report);

}  // namespace anosovlab
