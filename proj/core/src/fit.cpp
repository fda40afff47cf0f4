#include "lrp/fit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace lrp {

namespace {

// Points averaged per distinct n, ascending.
std::vector<FitPoint> collapse(const std::vector<FitPoint>& points) {
  std::map<std::int64_t, std::pair<double, std::int64_t>> by_n;
  for (const auto& p : points) {
    auto& [sum, count] = by_n[p.n];
    sum += p.mean;
    ++count;
  }
  std::vector<FitPoint> out;
  out.reserve(by_n.size());
  for (const auto& [n, acc] : by_n) out.push_back({n, acc.first / acc.second});
  return out;
}

struct Regression {
  double slope, std_err, r_squared;
};

Regression least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;

  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("fit: degenerate abscissa (zero variance)");

  const double slope = sxy / sxx;
  double ss_res = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = y[i] - my - slope * (x[i] - mx);
    ss_res += r * r;
  }
  const double std_err = m > 2 ? std::sqrt(ss_res / (m - 2) / sxx) : 0.0;
  const double r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return {slope, std_err, r_squared};
}

}  // namespace

ScalingFit fit_power_law(const std::vector<FitPoint>& raw) {
  const auto points = collapse(raw);
  if (points.size() < 4) {
    throw std::invalid_argument("fit_power_law: need >= 4 distinct n values");
  }
  std::vector<double> x, y;
  for (const auto& p : points) {
    if (!(p.mean > 0.0)) {
      throw std::invalid_argument("fit_power_law: metric means must be positive");
    }
    x.push_back(std::log(static_cast<double>(p.n)));
    y.push_back(std::log(p.mean));
  }
  const Regression reg = least_squares(x, y);

  ScalingFit fit;
  fit.regime = "power";
  fit.value = reg.slope;
  fit.std_err = reg.std_err;
  fit.r_squared = reg.r_squared;
  fit.n_min = points.front().n;
  fit.n_max = points.back().n;
  fit.points = static_cast<int>(points.size());
  return fit;
}

ScalingFit fit_loglog_ratio(const std::vector<FitPoint>& raw, RatioRegime regime) {
  const auto points = collapse(raw);
  if (points.size() < 4) {
    throw std::invalid_argument("fit_loglog_ratio: need >= 4 distinct n values");
  }
  for (const auto& p : points) {
    if (p.n < 16) throw std::invalid_argument("fit_loglog_ratio: need n >= 16");
    if (!(p.mean > 0.0)) {
      throw std::invalid_argument("fit_loglog_ratio: metric means must be positive");
    }
  }

  ScalingFit fit;
  fit.n_min = points.front().n;
  fit.n_max = points.back().n;
  fit.points = static_cast<int>(points.size());

  if (regime == RatioRegime::polylog) {
    std::vector<double> x, y;
    for (const auto& p : points) {
      x.push_back(std::log(std::log(static_cast<double>(p.n))));
      y.push_back(std::log(p.mean));
    }
    const Regression reg = least_squares(x, y);
    fit.regime = "polylog";
    fit.value = reg.slope;
    fit.std_err = reg.std_err;
    fit.r_squared = reg.r_squared;
    return fit;
  }

  fit.regime = "ratio";
  double sum = 0.0, lo = 0.0, hi = 0.0;
  bool first = true;
  for (const auto& p : points) {
    const double logn = std::log(static_cast<double>(p.n));
    const double ratio = p.mean * std::log(logn) / logn;
    sum += ratio;
    lo = first ? ratio : std::min(lo, ratio);
    hi = first ? ratio : std::max(hi, ratio);
    first = false;
  }
  fit.value = sum / points.size();
  fit.spread = hi / lo;
  return fit;
}

}  // namespace lrp
