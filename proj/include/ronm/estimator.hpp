#ifndef RONM_ESTIMATOR_HPP
#define RONM_ESTIMATOR_HPP

// Gaussian iterate distribution, the importance ratio R(z), the differenced
// gradient/Hessian estimates, and Monte Carlo oracles for the smoothed
// surrogate s(x) = E[(1 - 1/lambda) e(X) + (1/lambda) e((1 - lambda) X + lambda x)].

#include "ronm/core.hpp"
#include "ronm/extension.hpp"
#include "ronm/geometry.hpp"
#include "ronm/random.hpp"

#include <cmath>
#include <functional>

namespace ronm {

/// N(mu, P^{-1}) with P = L L^T factored once at construction.
class IterateDistribution {
 public:
  IterateDistribution(Vector mu, SymMatrix precision)
      : mu_(std::move(mu)), precision_(std::move(precision)), llt_(precision_.matrix()) {
    if (mu_.size() != precision_.dim())
      throw PreconditionError("IterateDistribution: dimension mismatch");
    if (llt_.info() != Eigen::Success || !(llt_.matrixL().toDenseMatrix().diagonal().minCoeff() > 0.0))
      throw DomainError("IterateDistribution: precision is not positive definite");
    chol_ = llt_.matrixL();
    logdet_ = 2.0 * chol_.diagonal().array().log().sum();
  }

  int dim() const { return static_cast<int>(mu_.size()); }
  const Vector& mu() const { return mu_; }
  const SymMatrix& precision() const { return precision_; }
  const Matrix& chol() const { return chol_; }
  double logdet_precision() const { return logdet_; }

  /// Sigma v = P^{-1} v
  Vector solve(const Vector& v) const { return llt_.solve(v); }
  Matrix covariance() const { return llt_.solve(Matrix::Identity(dim(), dim())); }
  /// v^T P v
  double norm2(const Vector& v) const { return (chol_.transpose() * v).squaredNorm(); }

  /// mu + L^{-T} u with u standard normal.
  Vector transform(const Vector& u) const {
    return mu_ + chol_.transpose().triangularView<Eigen::Upper>().solve(u);
  }

 private:
  Vector mu_;
  SymMatrix precision_;
  Eigen::LLT<Matrix> llt_;
  Matrix chol_;
  double logdet_ = 0.0;
};

inline Vector sample_action(const IterateDistribution& dist, Rng& rng) {
  return dist.transform(rng.normal_vector(dist.dim()));
}

/// Ratios whose log exceeds this are clamped and flagged.
inline constexpr double kMaxLogRatio = 700.0;

struct DensityRatio {
  double value = 1.0;
  double log_value = 0.0;
  bool clamped = false;
};

/// R(z) = p((X - lambda z)/(1 - lambda)) / ((1 - lambda)^d p(X)), in log space.
inline DensityRatio density_ratio(const IterateDistribution& dist, const Vector& X, double lambda,
                                  const Vector& z) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw PreconditionError("density_ratio: lambda must lie in (0, 1)");
  const Vector shifted = (X - lambda * z) / (1.0 - lambda) - dist.mu();
  const double lr = -0.5 * dist.norm2(shifted) + 0.5 * dist.norm2(X - dist.mu()) -
                    dist.dim() * std::log1p(-lambda);
  DensityRatio out;
  out.log_value = lr;
  if (lr > kMaxLogRatio) {
    out.clamped = true;
    out.value = std::exp(kMaxLogRatio);
  } else {
    out.value = std::exp(lr);
  }
  return out;
}

struct EstimatePair {
  Vector g;
  SymMatrix H;
  double ratio = 0.0;
  double z = 0.0;
  bool clamped = false;
};

/// g = R Z P (X - mu) / (1 - lambda)^2
/// H = lambda R Z / (1 - lambda)^2 [P (X - mu)(X - mu)^T P / (1 - lambda)^2 - P]
/// with R = R(mu).
inline EstimatePair estimate_pair(const IterateDistribution& dist, const Vector& X, double Z,
                                  double lambda) {
  const DensityRatio r = density_ratio(dist, X, lambda, dist.mu());
  const double om = 1.0 - lambda;
  const Vector pv = dist.precision().matrix() * (X - dist.mu());
  const double rz = r.value * Z;
  EstimatePair e;
  e.g = (rz / (om * om)) * pv;
  e.H = SymMatrix((lambda * rz / (om * om)) *
                  (pv * pv.transpose() / (om * om) - dist.precision().matrix()));
  e.ratio = r.value;
  e.z = Z;
  e.clamped = r.clamped;
  return e;
}

/// The same estimates written around an arbitrary point z:
///   w = (X - lambda z)/(1 - lambda) - mu
///   g = Z R(z)/(1 - lambda) P w,  H = lambda Z R(z)/(1 - lambda)^2 (P w w^T P - P).
/// At z = mu this coincides with estimate_pair.
inline EstimatePair estimate_pair_at(const IterateDistribution& dist, const Vector& X, double Z,
                                     double lambda, const Vector& z) {
  const DensityRatio r = density_ratio(dist, X, lambda, z);
  const double om = 1.0 - lambda;
  const Vector w = (X - lambda * z) / om - dist.mu();
  const Vector pw = dist.precision().matrix() * w;
  EstimatePair e;
  e.g = (Z * r.value / om) * pw;
  e.H = SymMatrix((lambda * Z * r.value / (om * om)) *
                  (pw * pw.transpose() - dist.precision().matrix()));
  e.ratio = r.value;
  e.z = Z;
  e.clamped = r.clamped;
  return e;
}

// ---------------------------------------------------- Monte Carlo oracles

using ScalarFn = std::function<double(const Vector&)>;

struct VectorEstimate {
  Vector mean;
  Vector std_error;
  long n = 0;
};

struct MatrixEstimate {
  SymMatrix mean;
  Matrix std_error;
  long n = 0;
};

namespace detail {

/// Running sums for entrywise mean/stderr.
template <typename T>
struct Moments {
  T sum;
  T sumsq;
  long n = 0;

  explicit Moments(T zero) : sum(zero), sumsq(zero) {}
  void add(const T& x) {
    sum += x;
    sumsq += x.cwiseProduct(x);
    ++n;
  }
  T mean() const { return sum / static_cast<double>(n); }
  T std_error() const {
    const double nn = static_cast<double>(n);
    T m = mean();
    T var = (sumsq / nn - m.cwiseProduct(m)).cwiseMax(0.0) * (nn / (nn - 1.0));
    return (var / nn).cwiseSqrt();
  }
};

inline void require_mc(long n_samples, double lambda, const char* op) {
  if (n_samples < 10000) throw PreconditionError(std::string(op) + ": need n_samples >= 1e4");
  if (!(lambda > 0.0 && lambda < 1.0))
    throw PreconditionError(std::string(op) + ": lambda must lie in (0, 1)");
}

}  // namespace detail

/// Monte Carlo surrogate value s(x), X ~ dist.
inline MonteCarloEstimate surrogate_mc(const ScalarFn& e, const IterateDistribution& dist,
                                       double lambda, const Vector& x, long n_samples,
                                       std::uint64_t seed) {
  detail::require_mc(n_samples, lambda, "surrogate_mc");
  Rng rng(seed, Stream::MonteCarlo);
  double sum = 0.0, sumsq = 0.0;
  for (long i = 0; i < n_samples; ++i) {
    const Vector X = sample_action(dist, rng);
    const double v =
        (1.0 - 1.0 / lambda) * e(X) + (1.0 / lambda) * e((1.0 - lambda) * X + lambda * x);
    sum += v;
    sumsq += v * v;
  }
  const double n = static_cast<double>(n_samples);
  const double m = sum / n;
  const double var = std::max(0.0, sumsq / n - m * m) * n / (n - 1.0);
  return {m, std::sqrt(var / n), n_samples};
}

inline MonteCarloEstimate surrogate_mc(const ExtendedLoss& ext, const IterateDistribution& dist,
                                       double lambda, const Vector& x, long n_samples,
                                       std::uint64_t seed) {
  return surrogate_mc([&ext](const Vector& v) { return ext(v); }, dist, lambda, x, n_samples,
                      seed);
}

/// Average of the g-formula over fresh draws with the exact value e(X) in
/// place of Z. Estimates grad s(mu).
inline VectorEstimate surrogate_gradient_mc(const ScalarFn& e, const IterateDistribution& dist,
                                            double lambda, long n_samples, std::uint64_t seed) {
  detail::require_mc(n_samples, lambda, "surrogate_gradient_mc");
  Rng rng(seed, Stream::MonteCarlo);
  detail::Moments<Vector> acc(Vector::Zero(dist.dim()));
  for (long i = 0; i < n_samples; ++i) {
    const Vector X = sample_action(dist, rng);
    acc.add(estimate_pair(dist, X, e(X), lambda).g);
  }
  return {acc.mean(), acc.std_error(), n_samples};
}

/// Average of the H-formula over fresh draws with e(X) in place of Z.
/// Estimates the Hessian of s at mu.
inline MatrixEstimate surrogate_hessian_mc(const ScalarFn& e, const IterateDistribution& dist,
                                           double lambda, long n_samples, std::uint64_t seed) {
  detail::require_mc(n_samples, lambda, "surrogate_hessian_mc");
  Rng rng(seed, Stream::MonteCarlo);
  detail::Moments<Matrix> acc(Matrix::Zero(dist.dim(), dist.dim()));
  for (long i = 0; i < n_samples; ++i) {
    const Vector X = sample_action(dist, rng);
    acc.add(estimate_pair(dist, X, e(X), lambda).H.matrix());
  }
  return {SymMatrix(acc.mean()), acc.std_error(), n_samples};
}

inline MatrixEstimate surrogate_hessian_mc(const ExtendedLoss& ext,
                                           const IterateDistribution& dist, double lambda,
                                           long n_samples, std::uint64_t seed) {
  return surrogate_hessian_mc([&ext](const Vector& v) { return ext(v); }, dist, lambda,
                              n_samples, seed);
}

/// Both sides of the Gaussian integration-by-parts identity, from the same
/// draws: E[hess g(X)] and E[g(X) (P w w^T P - P)] with w = X - mu.
struct SteinEstimate {
  MatrixEstimate hessian_side;
  MatrixEstimate weight_side;
  /// entrywise stderr of (weight_side - hessian_side), paired per draw
  Matrix difference_std_error;
};

inline SteinEstimate stein_mc(const ScalarFn& g, const std::function<Matrix(const Vector&)>& hess,
                              const IterateDistribution& dist, long n_samples,
                              std::uint64_t seed) {
  if (n_samples < 10000) throw PreconditionError("stein_mc: need n_samples >= 1e4");
  Rng rng(seed, Stream::MonteCarlo);
  const int d = dist.dim();
  const Matrix& P = dist.precision().matrix();
  detail::Moments<Matrix> lhs(Matrix::Zero(d, d)), rhs(Matrix::Zero(d, d)), diff(Matrix::Zero(d, d));
  for (long i = 0; i < n_samples; ++i) {
    const Vector X = sample_action(dist, rng);
    const Vector pw = P * (X - dist.mu());
    const Matrix h = hess(X);
    const Matrix w = g(X) * (pw * pw.transpose() - P);
    lhs.add(h);
    rhs.add(w);
    diff.add(w - h);
  }
  return {{SymMatrix(lhs.mean()), lhs.std_error(), n_samples},
          {SymMatrix(rhs.mean()), rhs.std_error(), n_samples},
          diff.std_error()};
}

/// E[hess |X - x_star|] through the weight form E[|X - x_star| (P w w^T P - P)],
/// which stays finite-variance where the pointwise Hessian does not.
inline MatrixEstimate distance_curvature_mc(const IterateDistribution& dist, const Vector& x_star,
                                            long n_samples, std::uint64_t seed) {
  if (n_samples < 10000) throw PreconditionError("distance_curvature_mc: need n_samples >= 1e4");
  Rng rng(seed, Stream::MonteCarlo);
  const int d = dist.dim();
  const Matrix& P = dist.precision().matrix();
  detail::Moments<Matrix> acc(Matrix::Zero(d, d));
  for (long i = 0; i < n_samples; ++i) {
    const Vector X = sample_action(dist, rng);
    const Vector pw = P * (X - dist.mu());
    acc.add((X - x_star).norm() * (pw * pw.transpose() - P));
  }
  return {SymMatrix(acc.mean()), acc.std_error(), n_samples};
}

/// 6^{-d/2} exp(-|mu - x_star|^2_{P}) |Sigma|^{-1/2} / 2
inline double distance_curvature_bound(const IterateDistribution& dist, const Vector& x_star) {
  const double d = dist.dim();
  const double sigma_norm = 1.0 / dist.precision().min_eigenvalue();
  return std::pow(6.0, -d / 2.0) * std::exp(-dist.norm2(dist.mu() - x_star)) /
         std::sqrt(sigma_norm) / 2.0;
}

}  // namespace ronm

#endif  // RONM_ESTIMATOR_HPP
