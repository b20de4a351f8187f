#ifndef RONM_GEOMETRY_HPP
#define RONM_GEOMETRY_HPP

// Convex bodies, Minkowski gauges, ellipsoidal-norm projection and the
// closed-form Hessians of l_p-norm powers.

#include "ronm/core.hpp"
#include "ronm/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace ronm {

/// The action set K. Either a Euclidean ball (which must contain the origin
/// in its interior) or the whole space.
class ConvexBody {
 public:
  enum class Kind { EuclideanBall, WholeSpace };

  static ConvexBody ball(Vector center, double radius) {
    if (!(radius > 0.0)) throw PreconditionError("ConvexBody::ball: radius must be positive");
    if (!(center.norm() < radius))
      throw PreconditionError("ConvexBody::ball: the origin must be interior to the ball");
    ConvexBody b;
    b.kind_ = Kind::EuclideanBall;
    b.center_ = std::move(center);
    b.radius_ = radius;
    b.dim_ = static_cast<int>(b.center_.size());
    return b;
  }
  static ConvexBody unit_ball(int d) { return ball(Vector::Zero(d), 1.0); }
  static ConvexBody whole_space(int d) {
    if (d < 1) throw PreconditionError("ConvexBody::whole_space: dimension must be positive");
    ConvexBody b;
    b.kind_ = Kind::WholeSpace;
    b.center_ = Vector::Zero(d);
    b.dim_ = d;
    return b;
  }

  Kind kind() const { return kind_; }
  bool bounded() const { return kind_ == Kind::EuclideanBall; }
  int dim() const { return dim_; }
  const Vector& center() const { return center_; }
  double radius() const { return radius_; }

  /// Radius of the largest origin-centred ball inside K.
  double r_in() const {
    require_bounded("r_in");
    return radius_ - center_.norm();
  }
  /// Radius of the smallest origin-centred ball containing K.
  double r_out() const {
    require_bounded("r_out");
    return radius_ + center_.norm();
  }

  bool contains(const Vector& x, double tol = 0.0) const {
    if (!bounded()) return true;
    return (x - center_).norm() <= radius_ + tol;
  }

  void require_bounded(const char* op) const {
    if (!bounded()) throw UnsupportedError(std::string(op) + ": not defined for WholeSpace");
  }

 private:
  ConvexBody() = default;

  Kind kind_ = Kind::WholeSpace;
  Vector center_;
  double radius_ = 0.0;
  int dim_ = 0;
};

/// Minkowski functional pi(x) = inf{t > 0 : x in tK}.
inline double gauge(const ConvexBody& body, const Vector& x) {
  body.require_bounded("gauge");
  const Vector& c = body.center();
  const double r = body.radius();
  const double xx = x.squaredNorm();
  if (xx == 0.0) return 0.0;
  if (c.squaredNorm() == 0.0) return std::sqrt(xx) / r;
  // ||x - t c|| = t r  <=>  t^2 (r^2 - |c|^2) + 2 t <x,c> - |x|^2 = 0
  const double a = r * r - c.squaredNorm();
  const double b = x.dot(c);
  const double disc = std::sqrt(b * b + a * xx);
  // numerically stable root
  return b >= 0.0 ? xx / (b + disc) : (disc - b) / a;
}

/// pi^+(x) = max(1, pi(x)).
inline double gauge_plus(const ConvexBody& body, const Vector& x) {
  return std::max(1.0, gauge(body, x));
}

/// Projection defaults: radial residual tolerance and bisection cap.
inline constexpr double kProjectionTol = 1e-10;
inline constexpr int kProjectionMaxIter = 200;

/// argmin_{x in K} (x - y)^T P (x - y).
///
/// For a ball the KKT point is x(l) = c + (P + l I)^{-1} P (y - c) with the
/// multiplier l >= 0 chosen so that ||x(l) - c|| = radius. ||x(l) - c|| is
/// decreasing in l, so l is bracketed and found by Newton steps safeguarded
/// with bisection.
inline Vector project_ellipsoidal(const ConvexBody& body, const SymMatrix& precision,
                                  const Vector& y, double tol = kProjectionTol,
                                  int max_iter = kProjectionMaxIter) {
  if (!(tol > 0.0)) throw PreconditionError("project_ellipsoidal: tol must be positive");
  Eigen::SelfAdjointEigenSolver<Matrix> es(precision.matrix());
  if (es.info() != Eigen::Success || !(es.eigenvalues().minCoeff() > 0.0))
    throw DomainError("project_ellipsoidal: precision is not positive definite");
  if (!body.bounded()) return y;

  const Vector& c = body.center();
  const double radius = body.radius();
  const Vector rel = y - c;
  if (rel.norm() <= radius) return y;

  const Vector& w = es.eigenvalues();
  const Vector b = es.eigenvectors().transpose() * rel;
  auto coords = [&](double l) -> Vector {
    return (w.array() * b.array() / (w.array() + l)).matrix();
  };
  // phi(l) = ||x(l) - c|| - radius, decreasing and convex in l
  auto phi = [&](double l) { return coords(l).norm() - radius; };

  double lo = 0.0;
  double hi = w.maxCoeff() * b.norm() / radius;
  while (phi(hi) > 0.0) hi *= 2.0;  // guards rounding at the bracket end
  double l = 0.5 * (lo + hi);
  double res = phi(l);
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(res) <= tol) {
      return c + es.eigenvectors() * coords(l);
    }
    if (res > 0.0)
      lo = l;
    else
      hi = l;
    // d/dl ||x(l)|| = -sum w_i^2 b_i^2 / (w_i + l)^3 / ||x(l)||
    const Vector xl = coords(l);
    const double nx = xl.norm();
    const double deriv =
        -(xl.array().square() / (w.array() + l)).sum() / std::max(nx, 1e-300);
    double next = deriv < 0.0 ? l - res / deriv : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    l = next;
    res = phi(l);
  }
  if (std::abs(res) <= tol) return c + es.eigenvectors() * coords(l);
  throw ConvergenceError("project_ellipsoidal: multiplier search did not converge", res);
}

inline double lp_norm(const Vector& x, double p) {
  if (p == 2.0) return x.norm();
  return std::pow(x.array().abs().pow(p).sum(), 1.0 / p);
}

/// Hessian of ||x||_p^ell:
///   ell ||x||_p^{ell-2} ((p-1) Lambda + (ell-p) x_(p) x_(p)^T),
///   Lambda = diag((|x_i|/||x||_p)^{p-2}),  x_(p)_i = sgn(x_i) (|x_i|/||x||_p)^{p-1}.
inline SymMatrix lp_power_hessian(const Vector& x, double p, double ell) {
  if (!(p > 1.0 && p <= 2.0)) throw PreconditionError("lp_power_hessian: p must lie in (1, 2]");
  if (!(ell >= 1.0)) throw PreconditionError("lp_power_hessian: ell must be >= 1");
  if (x.squaredNorm() == 0.0) throw DomainError("lp_power_hessian: singular at x = 0");
  if (p < 2.0 && (x.array() == 0.0).any())
    throw DomainError("lp_power_hessian: zero coordinate with p < 2 (Lambda diverges)");

  const Eigen::Index d = x.size();
  const double np = lp_norm(x, p);
  Vector lam(d), xp(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double ratio = std::abs(x(i)) / np;
    lam(i) = p == 2.0 ? 1.0 : std::pow(ratio, p - 2.0);
    const double mag = p == 2.0 ? ratio : std::pow(ratio, p - 1.0);
    xp(i) = x(i) < 0.0 ? -mag : mag;
  }
  Matrix h = (p - 1.0) * Matrix(lam.asDiagonal()) + (ell - p) * xp * xp.transpose();
  h *= ell * std::pow(np, ell - 2.0);
  return SymMatrix(h);
}

/// Curvature floor ell (min(ell, p) - 1) d^{-(2-ell)(2-p)/(2p)} ||x||_2^{ell-2}.
inline double lp_power_hessian_lower_bound(const Vector& x, double p, double ell) {
  const double d = static_cast<double>(x.size());
  return ell * (std::min(ell, p) - 1.0) * std::pow(d, -(2.0 - ell) * (2.0 - p) / (2.0 * p)) *
         std::pow(x.norm(), ell - 2.0);
}

/// c with beta |x|_p^ell - c |x|_2^ell convex: the Hessian floor above against the
/// largest eigenvalue ell |x|^{ell-2} of the Hessian of |x|_2^ell. Exact (c = beta)
/// for p = 2.
inline double power_norm_convexity_modulus(double beta, double ell, double p, int d) {
  if (p == 2.0) return beta;
  return beta * (std::min(ell, p) - 1.0) *
         std::pow(static_cast<double>(d), -(2.0 - ell) * (2.0 - p) / (2.0 * p));
}

/// Guaranteed volume share of K inside a ball of radius <= r around any x in K:
/// (1/sqrt(2 pi d)) (r / (sqrt(2) R))^{d-1}.
inline double cone_fraction_bound(int d, double r, double R) {
  return std::pow(r / (std::numbers::sqrt2 * R), d - 1) /
         std::sqrt(2.0 * std::numbers::pi * d);
}

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long n = 0;
};

/// Monte Carlo estimate of Vol(K ∩ B_radius(x)) / Vol(B_radius(x)).
inline MonteCarloEstimate cone_fraction_mc(const ConvexBody& body, const Vector& x,
                                           double radius, long n_samples, std::uint64_t seed) {
  body.require_bounded("cone_fraction_mc");
  if (!body.contains(x, 1e-12)) throw PreconditionError("cone_fraction_mc: x is not in K");
  if (!(radius > 0.0 && radius <= body.r_in() * (1.0 + 1e-12)))
    throw PreconditionError("cone_fraction_mc: radius must lie in (0, r_in]");
  if (n_samples < 10000) throw PreconditionError("cone_fraction_mc: need n_samples >= 1e4");

  Rng rng(seed, Stream::MonteCarlo);
  long hits = 0;
  for (long i = 0; i < n_samples; ++i)
    if (body.contains(rng.uniform_in_ball(x, radius))) ++hits;
  const double p = static_cast<double>(hits) / static_cast<double>(n_samples);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples)), n_samples};
}

}  // namespace ronm

#endif  // RONM_GEOMETRY_HPP
