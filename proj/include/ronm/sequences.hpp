#ifndef RONM_SEQUENCES_HPP
#define RONM_SEQUENCES_HPP

// Deterministic checks of the two scalar recursions behind the precision
// growth rates.

#include "ronm/core.hpp"
#include "ronm/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ronm {

struct SequenceCheck {
  bool pass = true;
  long first_violation = 0;  // 0 when none
  /// min over n of x_n / bound_n (lower-bound check) or bound_n / x_n (upper)
  double worst_ratio = std::numeric_limits<double>::infinity();
  long length = 0;
};

/// x_{n+1} = x_n + a x_n^{(2-b)/2} from x_1, and the floor x_n >= (a n)^{2/b} / 8,
/// which is guaranteed once x_1^{b/2} >= a and 1 <= b <= 2.
inline SequenceCheck growth_recursion_check(double a, double b, double x1, long n_max) {
  if (!(a > 0.0) || b < 1.0 || b > 2.0)
    throw PreconditionError("growth_recursion_check: need a > 0 and 1 <= b <= 2");
  if (std::pow(x1, b / 2.0) < a)
    throw PreconditionError("growth_recursion_check: need x_1^{b/2} >= a");
  SequenceCheck out;
  double x = x1;
  for (long n = 1; n <= n_max; ++n) {
    const double floor = std::pow(a * static_cast<double>(n), 2.0 / b) / 8.0;
    const double ratio = x / floor;
    if (ratio < out.worst_ratio) out.worst_ratio = ratio;
    if (x < floor && out.pass) {
      out.pass = false;
      out.first_violation = n;
    }
    x += a * std::pow(x, (2.0 - b) / 2.0);
  }
  out.length = n_max;
  return out;
}

/// A positive sequence with x_n <= a sqrt(b n + c sum_{k<n} x_k), c <= 2, and
/// the ceiling x_n <= h n, h = max(a^2, b). Each term is the hypothesis bound
/// times a factor drawn from [slack_lo, 1]; slack_lo = 1 gives the extremal
/// sequence.
inline SequenceCheck induction_bound_check(double a, double b, double c, long n_max,
                                           double slack_lo, std::uint64_t seed) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0 && c <= 2.0))
    throw PreconditionError("induction_bound_check: need a, b > 0 and 0 < c <= 2");
  if (!(slack_lo > 0.0 && slack_lo <= 1.0))
    throw PreconditionError("induction_bound_check: slack_lo must lie in (0, 1]");
  Rng rng(seed);
  const double h = std::max(a * a, b);
  SequenceCheck out;
  double partial = 0.0;
  for (long n = 1; n <= n_max; ++n) {
    const double cap = a * std::sqrt(b * static_cast<double>(n) + c * partial);
    const double u = slack_lo >= 1.0 ? 1.0 : rng.uniform(slack_lo, 1.0);
    const double x = u * cap;
    const double bound = h * static_cast<double>(n);
    const double ratio = bound / x;
    if (ratio < out.worst_ratio) out.worst_ratio = ratio;
    // the extremal sequence can sit exactly on h n; allow one ulp-scale of rounding
    if (x > bound * (1.0 + 1e-14) && out.pass) {
      out.pass = false;
      out.first_violation = n;
    }
    partial += x;
  }
  out.length = n_max;
  return out;
}

}  // namespace ronm

#endif  // RONM_SEQUENCES_HPP
