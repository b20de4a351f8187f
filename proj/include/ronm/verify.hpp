#ifndef RONM_VERIFY_HPP
#define RONM_VERIFY_HPP

// Lemma battery: each named check compares a statistic against the bound it
// is supposed to respect and reports pass/fail with a runtime.

#include "ronm/environment.hpp"
#include "ronm/estimator.hpp"
#include "ronm/extension.hpp"
#include "ronm/geometry.hpp"
#include "ronm/sequences.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace ronm {

struct CheckRecord {
  std::string name;
  std::string anchor;
  /// worst case over the check's cases; pass means statistic vs bound holds
  double statistic = 0.0;
  double bound = 0.0;
  double std_error = 0.0;
  std::string relation = "<=";
  bool pass = false;
  double runtime_seconds = 0.0;
  long cases = 0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckRecord> checks;
  long total() const { return static_cast<long>(checks.size()); }
  long passed() const {
    long k = 0;
    for (const auto& c : checks) k += c.pass ? 1 : 0;
    return k;
  }
  bool all_pass() const { return passed() == total(); }
};

namespace detail {

inline Matrix random_orthogonal(Rng& rng, int d) {
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(d, d);
}

/// Precision with eigenvalues log-uniform in [lo, hi] and a random basis.
inline SymMatrix random_precision(Rng& rng, int d, double lo, double hi) {
  const Matrix q = random_orthogonal(rng, d);
  Vector ev(d);
  for (int i = 0; i < d; ++i) ev(i) = std::exp(rng.uniform(std::log(lo), std::log(hi)));
  return SymMatrix(q * ev.asDiagonal() * q.transpose());
}

inline Vector random_vector(Rng& rng, int d, double scale) {
  return scale * rng.normal_vector(d);
}

/// The boundary point of the ball in a uniformly random direction.
inline Vector random_boundary_point(Rng& rng, const ConvexBody& body) {
  const Vector u = rng.normal_vector(body.dim());
  return body.center() + body.radius() * u / u.norm();
}

/// |x|_2^ell and its Hessian ell |x|^{ell-2} (I + (ell-2) u u^T), u = x/|x|.
inline double power_norm_value(const Vector& x, double ell) { return std::pow(x.norm(), ell); }
inline Matrix power_norm_hessian(const Vector& x, double ell) {
  const double r = x.norm();
  const int d = static_cast<int>(x.size());
  if (r == 0.0) return Matrix::Zero(d, d);
  const Vector u = x / r;
  return ell * std::pow(r, ell - 2.0) *
         (Matrix::Identity(d, d) + (ell - 2.0) * u * u.transpose());
}

/// Losses on the unit ball with |f| <= 1 on K, used by the extension and
/// surrogate checks.
inline std::vector<LossSpec> test_losses(const ConvexBody& body, Rng& rng) {
  const int d = body.dim();
  std::vector<LossSpec> out;
  Vector theta = rng.normal_vector(d);
  theta /= theta.norm();
  out.push_back(LossSpec::linear(theta, body));
  const Vector xs = rng.uniform_in_ball(body.center(), 0.5 * body.radius());
  out.push_back(LossSpec::quadratic(SymMatrix::identity(d, 0.2), xs, 0.0, body));
  out.push_back(LossSpec::power_norm(0.4, 1.5, 2.0, xs, 0.0, body));
  out.push_back(LossSpec::power_norm(0.4, 1.0, 2.0, xs, 0.0, body));
  return out;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Tracks the worst case of a family of "lhs <= rhs" comparisons.
struct Worst {
  double margin = std::numeric_limits<double>::infinity();  // rhs - lhs at the worst case
  double lhs = 0.0, rhs = 0.0, se = 0.0;
  long cases = 0;
  std::string where;
  void add(double l, double r, double s, std::string w) {
    ++cases;
    if (r - l < margin) {
      margin = r - l;
      lhs = l;
      rhs = r;
      se = s;
      where = std::move(w);
    }
  }
};

inline CheckRecord finish(std::string name, std::string anchor, const Worst& w,
                          const Stopwatch& sw, std::string relation = "<=") {
  CheckRecord c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.statistic = w.lhs;
  c.bound = w.rhs;
  c.std_error = w.se;
  c.relation = std::move(relation);
  c.pass = w.cases > 0 && w.margin >= 0.0;
  c.cases = w.cases;
  c.detail = "worst case: " + w.where;
  c.runtime_seconds = sw.seconds();
  return c;
}

}  // namespace detail

// ------------------------------------------------------------------ checks

/// x_{n+1} = x_n + a x_n^{(2-b)/2} stays above (a n)^{2/b} / 8.
inline CheckRecord check_sequence_growth(long n_max = 1000000) {
  detail::Stopwatch sw;
  detail::Worst w;
  for (double a : {0.1, 1.0, 10.0})
    for (double b : {1.0, 1.5, 2.0}) {
      double x1 = std::pow(a, 2.0 / b);  // the smallest admissible start
      while (std::pow(x1, b / 2.0) < a) x1 = std::nextafter(x1, 2.0 * x1);
      const SequenceCheck s = growth_recursion_check(a, b, x1, n_max);
      // statistic: the floor's share of x_n at the worst round, must stay <= 1
      w.add(1.0 / s.worst_ratio, 1.0, 0.0,
            "a=" + std::to_string(a) + " b=" + std::to_string(b));
      if (!s.pass) w.add(1.0, 0.0, 0.0, "violation at n=" + std::to_string(s.first_violation));
    }
  return detail::finish("sequence_growth", "growth recursion floor x_n >= (a n)^{2/b}/8", w, sw);
}

/// x_n <= a sqrt(b n + c sum_{k<n} x_k) implies x_n <= max(a^2, b) n.
inline CheckRecord check_induction_bound(std::uint64_t seed, long n_max = 100000) {
  detail::Stopwatch sw;
  detail::Worst w;
  for (double a : {0.5, 1.0, 2.0})
    for (double b : {0.5, 1.0, 4.0})
      for (double c : {0.5, 2.0})
        for (double lo : {1.0, 0.3}) {
          const SequenceCheck s = induction_bound_check(a, b, c, n_max, lo, seed);
          w.add(1.0 / s.worst_ratio, 1.0 + 1e-14, 0.0,
                "a=" + std::to_string(a) + " b=" + std::to_string(b) +
                    " c=" + std::to_string(c) + " slack=" + std::to_string(lo));
        }
  return detail::finish("induction_bound", "induction ceiling x_n <= max(a^2, b) n", w, sw);
}

/// E[hess g(X)] <= E[g(X)(P w w^T P - P)] for convex Lipschitz g; the
/// statistic is -lambda_min(weight - hessian), bounded by 3 stderr.
inline CheckRecord check_stein(long budget, std::uint64_t seed, std::vector<int> dims = {1, 2, 3},
                               int states = 10) {
  detail::Stopwatch sw;
  detail::Worst w;
  Rng rng(seed, Stream::Probe);
  for (int d : dims)
    for (double ell : {1.0, 1.5})
      for (int k = 0; k < states; ++k) {
        const IterateDistribution dist(detail::random_vector(rng, d, 0.5),
                                       detail::random_precision(rng, d, 0.5, 20.0));
        const SteinEstimate est = stein_mc(
            [ell](const Vector& x) { return detail::power_norm_value(x, ell); },
            [ell](const Vector& x) { return detail::power_norm_hessian(x, ell); }, dist, budget,
            mix_seed(seed + 1000 * d + 10 * k + static_cast<std::uint64_t>(ell * 2)));
        const SymMatrix diff(est.weight_side.mean.matrix() - est.hessian_side.mean.matrix());
        const double se = est.difference_std_error.norm();
        w.add(-diff.min_eigenvalue(), 3.0 * se, se,
              "d=" + std::to_string(d) + " ell=" + std::to_string(ell) +
                  " state=" + std::to_string(k));
      }
  return detail::finish("stein", "generalized Stein identity for convex Lipschitz functions", w,
                        sw);
}

/// lambda_min E[hess |X - x_star|] >= 6^{-d/2} e^{-|mu - x_star|_P^2} |Sigma|^{-1/2} / 2;
/// the statistic is bound - estimate, allowed up to 3 stderr.
inline CheckRecord check_distance_curvature(long budget, std::uint64_t seed,
                                            std::vector<int> dims = {2, 3}, int states = 10) {
  detail::Stopwatch sw;
  detail::Worst w;
  Rng rng(seed, Stream::Probe);
  for (int d : dims)
    for (int k = 0; k < states; ++k) {
      const IterateDistribution dist(detail::random_vector(rng, d, 0.5),
                                     detail::random_precision(rng, d, 0.5, 20.0));
      const Vector xs = dist.transform(0.7 * rng.normal_vector(d));
      const MatrixEstimate est =
          distance_curvature_mc(dist, xs, budget, mix_seed(seed + 7919 * d + k));
      const double bound = distance_curvature_bound(dist, xs);
      const double se = est.std_error.norm();
      w.add(bound - est.mean.min_eigenvalue(), 3.0 * se, se,
            "d=" + std::to_string(d) + " state=" + std::to_string(k));
    }
  return detail::finish("distance_curvature", "curvature floor of the distance function", w, sw);
}

/// lp_power_hessian against central differences of the analytic gradient,
/// plus the curvature floor.
inline CheckRecord check_lp_hessian(std::uint64_t seed, int points = 1000) {
  detail::Stopwatch sw;
  detail::Worst err, floor;
  Rng rng(seed, Stream::Probe);
  const double h = 1e-5;
  for (double p : {1.25, 1.5, 2.0})
    for (double ell : {1.0, 1.5, 2.0})
      for (int k = 0; k < points; ++k) {
        const int d = 2 + k % 2;
        Vector x(d);
        for (int i = 0; i < d; ++i) {
          const double m = rng.uniform(0.1, 1.0);
          x(i) = rng.uniform() < 0.5 ? -m : m;
        }
        auto grad = [p, ell](const Vector& v) {
          const double np = lp_norm(v, p);
          Vector g(v.size());
          for (Eigen::Index i = 0; i < v.size(); ++i) {
            const double mag = std::pow(std::abs(v(i)) / np, p - 1.0);
            g(i) = (v(i) < 0.0 ? -mag : mag);
          }
          return Vector(ell * std::pow(np, ell - 1.0) * g);
        };
        Matrix fd(d, d);
        for (int j = 0; j < d; ++j) {
          Vector e = Vector::Zero(d);
          e(j) = h;
          fd.col(j) = (grad(x + e) - grad(x - e)) / (2.0 * h);
        }
        const SymMatrix H = lp_power_hessian(x, p, ell);
        const double scale = std::max(H.matrix().norm(), 1e-300);
        const std::string where = "p=" + std::to_string(p) + " ell=" + std::to_string(ell);
        err.add((fd - H.matrix()).norm() / scale, 1e-6, 0.0, where);
        floor.add(lp_power_hessian_lower_bound(x, p, ell), H.min_eigenvalue() + 1e-12 * scale,
                  0.0, where);
      }
  CheckRecord c = detail::finish("lp_hessian", "Hessian of the p-norm power and its floor", err, sw);
  c.pass = c.pass && floor.margin >= 0.0;
  c.cases += floor.cases;
  c.detail += "; floor margin " + std::to_string(floor.margin) + " at " + floor.where;
  return c;
}

/// Vol(K ∩ B_r(x)) / Vol(B_r(x)) >= (1/sqrt(2 pi d)) (r/(sqrt2 R))^{d-1}.
inline CheckRecord check_cone_fraction(long budget, std::uint64_t seed) {
  detail::Stopwatch sw;
  detail::Worst w;
  Rng rng(seed, Stream::Probe);
  for (int d : {2, 3, 5}) {
    const ConvexBody body = ConvexBody::unit_ball(d);
    std::vector<Vector> xs;
    Vector e0 = Vector::Zero(d);
    e0(0) = 0.5;
    xs.push_back(e0);
    for (int k = 0; k < 4; ++k) xs.push_back(detail::random_boundary_point(rng, body));
    xs.push_back(rng.uniform_in_ball(body.center(), 1.0));
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const MonteCarloEstimate m =
          cone_fraction_mc(body, xs[k], body.r_in(), budget, mix_seed(seed + 31 * d + k));
      w.add(cone_fraction_bound(d, body.r_in(), body.r_out()) - m.mean, 3.0 * m.std_error,
            m.std_error, "d=" + std::to_string(d) + " point=" + std::to_string(k));
    }
  }
  return detail::finish("cone_fraction", "K contains a spherical cone around each point", w, sw);
}

/// s(x) <= e(x): the surrogate never exceeds the extended loss.
inline CheckRecord check_surrogate_upper(long budget, std::uint64_t seed) {
  detail::Stopwatch sw;
  detail::Worst w;
  Rng rng(seed, Stream::Probe);
  for (int d : {1, 2, 3}) {
    const ConvexBody body = ConvexBody::unit_ball(d);
    const auto losses = detail::test_losses(body, rng);
    for (std::size_t li = 0; li < losses.size(); ++li) {
      const ExtendedLoss ext(losses[li].as_base(), body);
      for (double lambda : {0.1, 0.4}) {
        const IterateDistribution dist(rng.uniform_in_ball(body.center(), 0.8),
                                       detail::random_precision(rng, d, 1.0, 50.0));
        for (int k = 0; k < 3; ++k) {
          const Vector x = k == 0 ? dist.mu() : rng.uniform_in_ball(body.center(), 2.0);
          const MonteCarloEstimate s = surrogate_mc(ext, dist, lambda, x, budget,
                                                    mix_seed(seed + 100 * d + 10 * li + k));
          const double ex = ext(x);
          w.add(s.mean - ex, 3.0 * s.std_error + 1e-12 * (1.0 + std::abs(ex)), s.std_error,
                "d=" + std::to_string(d) + " loss=" + std::to_string(li) +
                    " lambda=" + std::to_string(lambda));
        }
      }
    }
  }
  return detail::finish("surrogate_upper", "surrogate lies below the loss", w, sw);
}

// ------------------------------------------------------- unbiasedness (CRN)

/// Per-coordinate z-scores of the paired differences between the estimator
/// and central finite differences of the surrogate on the same draws.
struct UnbiasednessResult {
  Vector grad_mean_diff, grad_se;
  Matrix hess_mean_diff, hess_se;
  Vector grad_estimate;
  Matrix hess_estimate;
  double max_abs_z = 0.0;
};

/// With y = (1 - lambda) X + lambda mu, s has gradient E[grad e(y)] and
/// Hessian lambda E[hess e(y)]; both are differenced in x with step h.
inline UnbiasednessResult unbiasedness_crn(const ScalarFn& e, const IterateDistribution& dist,
                                           double lambda, double h, long n_samples,
                                           std::uint64_t seed) {
  detail::require_mc(n_samples, lambda, "unbiasedness_crn");
  const int d = dist.dim();
  Rng rng(seed, Stream::MonteCarlo);
  detail::Moments<Vector> dg(Vector::Zero(d)), eg(Vector::Zero(d));
  detail::Moments<Matrix> dH(Matrix::Zero(d, d)), eH(Matrix::Zero(d, d));
  const double step = lambda * h;
  for (long i = 0; i < n_samples; ++i) {
    const Vector X = sample_action(dist, rng);
    const EstimatePair est = estimate_pair(dist, X, e(X), lambda);
    const Vector y = (1.0 - lambda) * X + lambda * dist.mu();
    Vector fg(d);
    Matrix fh(d, d);
    const double ey = e(y);
    for (int a = 0; a < d; ++a) {
      Vector ua = Vector::Zero(d);
      ua(a) = step;
      const double ep = e(y + ua), em = e(y - ua);
      fg(a) = (ep - em) / (2.0 * h * lambda);
      // second differences of s in x: lambda E[hess e], with step h in x
      fh(a, a) = (e(y + 2.0 * ua) - 2.0 * ey + e(y - 2.0 * ua)) / (4.0 * h * h * lambda);
      for (int b = 0; b < a; ++b) {
        Vector ub = Vector::Zero(d);
        ub(b) = step;
        const double v = (e(y + ua + ub) - e(y + ua - ub) - e(y - ua + ub) + e(y - ua - ub)) /
                         (4.0 * h * h * lambda);
        fh(a, b) = fh(b, a) = v;
      }
    }
    dg.add(est.g - fg);
    dH.add(est.H.matrix() - fh);
    eg.add(est.g);
    eH.add(est.H.matrix());
  }
  UnbiasednessResult r;
  r.grad_mean_diff = dg.mean();
  r.grad_se = dg.std_error();
  r.hess_mean_diff = dH.mean();
  r.hess_se = dH.std_error();
  r.grad_estimate = eg.mean();
  r.hess_estimate = eH.mean();
  for (int a = 0; a < d; ++a) {
    r.max_abs_z = std::max(r.max_abs_z, std::abs(r.grad_mean_diff(a)) / r.grad_se(a));
    for (int b = 0; b <= a; ++b)
      r.max_abs_z = std::max(r.max_abs_z, std::abs(r.hess_mean_diff(a, b)) / r.hess_se(a, b));
  }
  return r;
}

/// E[g] = grad s(mu) and E[H] = hess s(mu) at random states of the solver.
inline CheckRecord check_unbiasedness(long budget, std::uint64_t seed, int states = 5) {
  detail::Stopwatch sw;
  detail::Worst w;
  Rng rng(seed, Stream::Probe);
  const int d = 2;
  const ConvexBody body = ConvexBody::unit_ball(d);
  const auto losses = detail::test_losses(body, rng);
  for (int k = 0; k < states; ++k) {
    const ExtendedLoss ext(losses[k % losses.size()].as_base(), body);
    const IterateDistribution dist(rng.uniform_in_ball(body.center(), 0.7),
                                   detail::random_precision(rng, d, 2.0, 30.0));
    const UnbiasednessResult r =
        unbiasedness_crn([&ext](const Vector& v) { return ext(v); }, dist, 0.2, 1e-3, budget,
                         mix_seed(seed + 17 * k));
    w.add(r.max_abs_z, 3.0, 1.0, "state=" + std::to_string(k));
  }
  return detail::finish("unbiasedness", "g and H are unbiased for the surrogate's derivatives",
                        w, sw);
}

/// sup_X R(mu) = (1 - lambda)^{-d}, so R(mu) <= 3 on lambda <= 1 - 3^{-1/d}.
inline CheckRecord check_ratio_bound(long budget, std::uint64_t seed) {
  detail::Stopwatch sw;
  detail::Worst w;
  Rng rng(seed, Stream::Probe);
  for (int d : {1, 2, 3}) {
    const double lam_max = d == 1 ? 0.5 : 1.0 - std::pow(3.0, -1.0 / d);
    const long states = std::max(1L, budget / 1000);
    double worst = 0.0;
    for (long s = 0; s < states; ++s) {
      const IterateDistribution dist(detail::random_vector(rng, d, 1.0),
                                     detail::random_precision(rng, d, 0.1, 100.0));
      const double lambda = lam_max * (1.0 - rng.uniform());  // (0, lam_max]
      for (int k = 0; k < 1000; ++k) {
        // include draws at and near the mode, where the ratio peaks
        const double scale = k < 10 ? 0.0 : (k < 100 ? 1e-3 : 1.0);
        const Vector X = dist.transform(scale * rng.normal_vector(d));
        worst = std::max(worst, density_ratio(dist, X, lambda, dist.mu()).value);
      }
    }
    w.add(worst, 3.0 * (1.0 + 1e-12), 0.0, "d=" + std::to_string(d));
  }
  return detail::finish("ratio_bound", "density ratio at the mean is at most 3", w, sw);
}

/// Agreement on K, convexity, Lipschitz bound, strong convexity (SC mode on
/// B_{R+eps}) and e(x/pi(x)) <= e(x) outside K.
inline CheckRecord check_extension(std::uint64_t seed, int pairs = 2000) {
  detail::Stopwatch sw;
  detail::Worst w;
  Rng rng(seed, Stream::Probe);
  for (int d : {1, 2, 3}) {
    const ConvexBody body = ConvexBody::unit_ball(d);
    const auto losses = detail::test_losses(body, rng);
    for (std::size_t li = 0; li < losses.size(); ++li) {
      const double alpha = losses[li].strong_convexity();
      for (int sc = 0; sc < 2; ++sc) {
        const double eps = body.r_in() / 2.0;
        const ExtendedLoss ext = sc ? ExtendedLoss(losses[li].as_base(), body,
                                                   StronglyConvexExtension{alpha, eps})
                                    : ExtendedLoss(losses[li].as_base(), body);
        const std::string tag = "d=" + std::to_string(d) + " loss=" + std::to_string(li) +
                                (sc ? " sc" : " plain");
        const double lip = ext.lipschitz_bound();
        const double reach = sc ? body.r_out() + eps : 3.0 * body.r_out();
        for (int k = 0; k < pairs; ++k) {
          const Vector in = rng.uniform_in_ball(body.center(), body.radius());
          const double f = losses[li](in);
          w.add(std::abs(ext(in) - f), 1e-12 * (1.0 + std::abs(f)), 0.0, tag + " agreement");

          const Vector x = rng.uniform_in_ball(body.center(), reach);
          const Vector y = rng.uniform_in_ball(body.center(), reach);
          const double t = rng.uniform();
          const double ex = ext(x), ey = ext(y), em = ext(t * x + (1.0 - t) * y);
          const double tol = 1e-10 * (1.0 + std::abs(ex) + std::abs(ey));
          const double curv = sc ? 0.5 * alpha * t * (1.0 - t) * (x - y).squaredNorm() : 0.0;
          w.add(em, t * ex + (1.0 - t) * ey - curv + tol, 0.0,
                tag + (sc ? " strong convexity" : " convexity"));
          w.add(std::abs(ex - ey), lip * (x - y).norm() * (1.0 + 1e-12) + 1e-14, 0.0,
                tag + " lipschitz");

          const Vector far =
              rng.uniform(1.05, 3.0) * detail::random_boundary_point(rng, body);
          const double pf = gauge(body, far);
          const double e_far = ext(far);
          w.add(ext(far / pf), e_far + 1e-12 * (1.0 + std::abs(e_far)), 0.0, tag + " retraction");
        }
      }
    }
  }
  return detail::finish("extension", "properties of the convex and strongly convex extensions",
                        w, sw);
}

/// (beta, ell)-convex f with 1 < ell <= 2 on K subset B_R is 2 beta (2R)^{ell-2}-QG;
/// the statistic is that modulus against the sampled growth.
inline CheckRecord check_qg_power(long budget, std::uint64_t seed) {
  detail::Stopwatch sw;
  detail::Worst w;
  Rng rng(seed, Stream::Probe);
  for (int d : {1, 2, 3})
    for (double ell : {1.25, 1.5, 2.0})
      for (double beta : {0.3, 1.0}) {
        const ConvexBody body = ConvexBody::unit_ball(d);
        const Vector xs = rng.uniform_in_ball(body.center(), 0.9);
        const LossSpec loss = LossSpec::power_norm(beta, ell, 2.0, xs, 0.0, body);
        const double rho = 2.0 * beta * std::pow(2.0 * body.r_out(), ell - 2.0);
        const double probed =
            growth_modulus_probe(loss, body, std::max(1000L, budget), mix_seed(seed + d));
        w.add(rho, probed * (1.0 + 1e-12), 0.0,
              "d=" + std::to_string(d) + " ell=" + std::to_string(ell) +
                  " beta=" + std::to_string(beta));
        // a (beta, ell)-convex loss with a convex, symmetric remainder
        const Matrix A = detail::random_orthogonal(rng, d);
        auto f = [&](const Vector& x) {
          const Vector v = x - xs;
          return beta * std::pow(v.norm(), ell) + 0.3 * (A * v).squaredNorm() +
                 0.2 * (A * v).lpNorm<1>();
        };
        double best = std::numeric_limits<double>::infinity();
        for (long k = 0; k < std::max(1000L, budget); ++k) {
          const Vector x = k % 2 ? detail::random_boundary_point(rng, body)
                                 : rng.uniform_in_ball(body.center(), body.radius());
          const double r2 = (x - xs).squaredNorm();
          if (r2 > 0.0) best = std::min(best, 2.0 * f(x) / r2);
        }
        w.add(rho, best * (1.0 + 1e-12), 0.0,
              "remainder d=" + std::to_string(d) + " ell=" + std::to_string(ell));
      }
  return detail::finish("qg_power", "power growth implies quadratic growth on a bounded set", w,
                        sw);
}

/// (beta, 1)-convex, symmetric f: f(x) >= f_star + beta |x - x_star| on all of
/// R^d, and beta <= 2/R once |f| <= 1 on K = B_R.
inline CheckRecord check_sharp_growth(long budget, std::uint64_t seed) {
  detail::Stopwatch sw;
  detail::Worst w;
  Rng rng(seed, Stream::Probe);
  for (int d : {1, 2, 3})
    for (int k = 0; k < 5; ++k) {
      const double beta = rng.uniform(0.2, 2.0);
      const Vector xs = rng.uniform_in_ball(Vector::Zero(d), 0.5);
      const Matrix A = detail::random_orthogonal(rng, d);
      const double c2 = rng.uniform(0.0, 1.0), c1 = rng.uniform(0.0, 1.0);
      auto f = [&](const Vector& x) {
        const Vector v = x - xs;
        return beta * v.norm() + c2 * (A * v).squaredNorm() + c1 * (A * v).lpNorm<1>();
      };
      const std::string tag = "d=" + std::to_string(d) + " case=" + std::to_string(k);
      double sup_k = 0.0;
      const ConvexBody body = ConvexBody::unit_ball(d);
      for (long i = 0; i < std::max(1000L, budget / 10); ++i) {
        const Vector x = xs + rng.uniform(0.0, 10.0) * rng.normal_vector(d);
        w.add(beta * (x - xs).norm(), f(x) * (1.0 + 1e-12), 0.0, tag + " floor");
        sup_k = std::max(sup_k, f(detail::random_boundary_point(rng, body)));
      }
      // normalise so that sup_K |f - f_star| = 1 (up to sampling), then beta' <= 2/R
      const double beta_norm = beta / sup_k;
      w.add(beta_norm, 2.0 / body.r_out(), 0.0, tag + " modulus");
    }
  return detail::finish("sharp_growth", "sharp growth of symmetric (beta, 1)-convex losses", w,
                        sw);
}

// -------------------------------------------------------------- registry

inline const std::vector<std::string>& available_checks() {
  static const std::vector<std::string> names{
      "sequence_growth", "induction_bound", "stein",         "distance_curvature",
      "lp_hessian",      "cone_fraction",   "surrogate_upper", "unbiasedness",
      "ratio_bound",     "extension",       "qg_power",      "sharp_growth"};
  return names;
}

inline constexpr long kDefaultVerifyBudget = 100000;

inline CheckRecord run_check(const std::string& name, long budget, std::uint64_t seed) {
  if (name == "sequence_growth") return check_sequence_growth();
  if (name == "induction_bound") return check_induction_bound(seed);
  if (name == "stein") return check_stein(budget, seed);
  if (name == "distance_curvature") return check_distance_curvature(budget, seed);
  if (name == "lp_hessian") return check_lp_hessian(seed);
  if (name == "cone_fraction") return check_cone_fraction(budget, seed);
  if (name == "surrogate_upper") return check_surrogate_upper(budget, seed);
  if (name == "unbiasedness") return check_unbiasedness(budget, seed);
  if (name == "ratio_bound") return check_ratio_bound(budget, seed);
  if (name == "extension") return check_extension(seed);
  if (name == "qg_power") return check_qg_power(budget, seed);
  if (name == "sharp_growth") return check_sharp_growth(budget, seed);
  std::string msg = "unknown check '" + name + "'; available:";
  for (const auto& n : available_checks()) msg += " " + n;
  throw ConfigError(msg);
}

/// Runs the selected checks (all when empty selection is expanded by the caller).
inline VerifyReport verify_lemmas(const std::vector<std::string>& selection, long budget,
                                  std::uint64_t seed) {
  if (selection.empty()) throw ConfigError("verify: selection is empty");
  if (budget < 10000) throw ConfigError("verify: budget must be >= 1e4");
  for (const auto& s : selection) {
    bool known = false;
    for (const auto& n : available_checks()) known = known || n == s;
    if (!known) run_check(s, budget, seed);  // throws with the list
  }
  VerifyReport rep;
  for (const auto& s : selection) rep.checks.push_back(run_check(s, budget, seed));
  return rep;
}

}  // namespace ronm

#endif  // RONM_VERIFY_HPP
