#ifndef RONM_EXTENSION_HPP
#define RONM_EXTENSION_HPP

// Lifting a loss defined on K to all of R^d.

#include "ronm/core.hpp"
#include "ronm/geometry.hpp"

#include <functional>
#include <utility>
#include <variant>

namespace ronm {

/// A base loss on K: an evaluation handle plus its declared Lipschitz
/// constant on K, minimizer and minimum value.
struct BaseLoss {
  std::function<double(const Vector&)> value;
  double G = 1.0;
  Vector x_star;
  double f_star = 0.0;

  double operator()(const Vector& x) const { return value(x); }
};

struct PlainExtension {};
struct StronglyConvexExtension {
  double alpha = 0.0;
  double eps = 0.0;
};
using ExtensionMode = std::variant<PlainExtension, StronglyConvexExtension>;

/// e(x) = pi^+(x) f(x / pi^+(x)) + G R (pi^+(x) - 1)
/// or, in strongly convex mode, the lift that stays alpha-strongly convex on
/// the ball B_{R+eps}.
class ExtendedLoss {
 public:
  ExtendedLoss(BaseLoss base, ConvexBody body, ExtensionMode mode = PlainExtension{})
      : base_(std::move(base)), body_(std::move(body)), mode_(mode) {
    body_.require_bounded("ExtendedLoss");
    if (auto* sc = std::get_if<StronglyConvexExtension>(&mode_)) {
      if (!(sc->eps > 0.0)) throw PreconditionError("ExtendedLoss: eps must be positive");
      if (!(sc->alpha >= 0.0)) throw PreconditionError("ExtendedLoss: alpha must be >= 0");
    }
  }

  const BaseLoss& base() const { return base_; }
  const ConvexBody& body() const { return body_; }
  const ExtensionMode& mode() const { return mode_; }
  bool strongly_convex() const { return std::holds_alternative<StronglyConvexExtension>(mode_); }
  double G() const { return base_.G; }
  double R() const { return body_.r_out(); }
  double r() const { return body_.r_in(); }

  double gauge_plus(const Vector& x) const { return ronm::gauge_plus(body_, x); }

  /// Plain convex extension.
  double plain_value(const Vector& x) const {
    const double pp = gauge_plus(x);
    return pp * base_(x / pp) + base_.G * R() * (pp - 1.0);
  }

  /// Strongly convex extension, closed form:
  ///   pi^+ f(x/pi^+) + (G + 3/2 alpha R) R (pi^+ - pi_eps^+)
  ///   + alpha/2 |x|^2 (1/pi_eps^+ - 1/pi^+) + M_eps (pi_eps^+ - 1)
  /// with pi_eps(x) = |x| / (R + eps).
  double sc_value(const Vector& x) const {
    const auto& sc = std::get<StronglyConvexExtension>(mode_);
    const double pp = gauge_plus(x);
    const double pe = std::max(1.0, x.norm() / (R() + sc.eps));
    const double a = sc.alpha;
    return pp * base_(x / pp) + (base_.G + 1.5 * a * R()) * R() * (pp - pe) +
           0.5 * a * x.squaredNorm() * (1.0 / pe - 1.0 / pp) + sc_sup_bound() * (pe - 1.0);
  }

  double operator()(const Vector& x) const {
    return strongly_convex() ? sc_value(x) : plain_value(x);
  }

  /// Lipschitz bound of the plain extension: 2GR/r + G + 1/r.
  double plain_lipschitz_bound() const { return 2.0 * G() * R() / r() + G() + 1.0 / r(); }

  /// G_eps = 4 [2R(G + aR)/r + (G + aR) + (1 + aR^2/2)/r + a(R + eps)].
  double sc_lipschitz_bound() const {
    const auto& sc = std::get<StronglyConvexExtension>(mode_);
    const double a = sc.alpha;
    const double Ga = G() + a * R();
    return 4.0 * (2.0 * R() * Ga / r() + Ga + (1.0 + 0.5 * a * R() * R()) / r() +
                  a * (R() + sc.eps));
  }

  /// M_eps = (R + eps) G_eps / 4.
  double sc_sup_bound() const {
    const auto& sc = std::get<StronglyConvexExtension>(mode_);
    return (R() + sc.eps) * sc_lipschitz_bound() / 4.0;
  }

  double lipschitz_bound() const {
    return strongly_convex() ? sc_lipschitz_bound() : plain_lipschitz_bound();
  }

 private:
  BaseLoss base_;
  ConvexBody body_;
  ExtensionMode mode_;
};

inline double extend_value(const ExtendedLoss& ext, const Vector& x) {
  if (ext.strongly_convex())
    throw PreconditionError("extend_value: extension is in strongly convex mode");
  return ext.plain_value(x);
}

inline double extend_value_sc(const ExtendedLoss& ext, const Vector& x) {
  if (!ext.strongly_convex())
    throw PreconditionError("extend_value_sc: extension is in plain mode");
  return ext.sc_value(x);
}

/// What the learner sees when it plays X and the environment draws eps for
/// the real action X / pi^+(X): Y = e(X) + pi^+(X) eps.
inline double learner_feedback(const ExtendedLoss& ext, const Vector& X, double eps_noise) {
  return ext(X) + ext.gauge_plus(X) * eps_noise;
}

}  // namespace ronm

#endif  // RONM_EXTENSION_HPP
