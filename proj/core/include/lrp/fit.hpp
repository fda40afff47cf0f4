#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lrp {

/// Mean of one metric at one grid side n.
struct FitPoint {
  std::int64_t n = 0;
  double mean = 0.0;
};

struct ScalingFit {
  std::string regime;       // "power", "polylog" or "ratio"
  double value = 0.0;       // fitted slope / exponent, or the mean ratio constant
  double std_err = 0.0;     // standard error of the slope (regression regimes)
  double r_squared = 0.0;   // regression regimes
  double spread = 1.0;      // ratio regime: max/min of the ratio series
  std::int64_t n_min = 0;
  std::int64_t n_max = 0;
  int points = 0;
};

/// Least-squares slope of log(mean) vs log(n). Needs >= 4 distinct n with
/// positive means and non-degenerate log(n) spread.
ScalingFit fit_power_law(const std::vector<FitPoint>& points);

enum class RatioRegime {
  /// The series C(n) = mean * log(log n) / log n; reports its average and
  /// max/min spread.
  log_over_loglog,
  /// Slope of log(mean) vs log(log n), the polylog exponent.
  polylog,
};

/// Needs >= 4 distinct n, all >= 16 so log(log n) > 1.
ScalingFit fit_loglog_ratio(const std::vector<FitPoint>& points, RatioRegime regime);

}  // namespace lrp
