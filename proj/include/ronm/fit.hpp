#ifndef RONM_FIT_HPP
#define RONM_FIT_HPP

// Log-log least squares for rate recovery.

#include "ronm/core.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace ronm {

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  long t_first = 0;
  long t_last = 0;
  long points = 0;
};

/// Window as a fraction of the horizon: rounds t with lo*n <= t <= hi*n.
struct FitWindow {
  double lo = 0.1;
  double hi = 1.0;
};

/// OLS of log(v_t) on log(t), t = 1..n (v[0] is round 1), over the window.
inline PowerLawFit fit_power_law(const std::vector<double>& series, FitWindow window = {}) {
  if (!(window.lo >= 0.0 && window.lo < window.hi && window.hi <= 1.0))
    throw PreconditionError("fit_power_law: window must satisfy 0 <= lo < hi <= 1");
  const long n = static_cast<long>(series.size());
  const long first = std::max(1L, static_cast<long>(std::ceil(window.lo * n)));
  const long last = static_cast<long>(std::floor(window.hi * n));
  if (last - first + 1 < 3)
    throw PreconditionError("fit_power_law: fewer than 3 rounds in the window");

  std::vector<double> xs, ys;
  xs.reserve(last - first + 1);
  ys.reserve(last - first + 1);
  for (long t = first; t <= last; ++t) {
    const double v = series[t - 1];
    if (!(v > 0.0))
      throw DomainError("fit_power_law: nonpositive value at round " + std::to_string(t));
    xs.push_back(std::log(static_cast<double>(t)));
    ys.push_back(std::log(v));
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  PowerLawFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - fit.intercept - fit.slope * xs[i];
    ssr += r * r;
  }
  fit.stderr_slope = std::sqrt(ssr / (m - 2.0) / sxx);
  fit.t_first = first;
  fit.t_last = last;
  fit.points = static_cast<long>(xs.size());
  return fit;
}

/// Per-round geometric mean across seeds. All series must share one length.
inline std::vector<double> geometric_mean(const std::vector<std::vector<double>>& per_seed) {
  if (per_seed.empty()) throw PreconditionError("geometric_mean: no series");
  const std::size_t n = per_seed.front().size();
  std::vector<double> out(n, 0.0);
  for (std::size_t s = 0; s < per_seed.size(); ++s) {
    if (per_seed[s].size() != n)
      throw PreconditionError("geometric_mean: series lengths differ");
    for (std::size_t t = 0; t < n; ++t) {
      const double v = per_seed[s][t];
      if (!(v > 0.0))
        throw DomainError("geometric_mean: nonpositive value at round " + std::to_string(t + 1) +
                          " of series " + std::to_string(s));
      out[t] += std::log(v);
    }
  }
  for (double& v : out) v = std::exp(v / static_cast<double>(per_seed.size()));
  return out;
}

}  // namespace ronm

#endif  // RONM_FIT_HPP
