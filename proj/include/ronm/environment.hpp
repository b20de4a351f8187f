#ifndef RONM_ENVIRONMENT_HPP
#define RONM_ENVIRONMENT_HPP

// Loss families, noise models and the bandit query protocol.
//
// The learner only ever sees a FeedbackOracle, which hands back the scalar
// Y. Everything the environment knows beyond that (the real action, the raw
// noise draw, x_star, regret) lives on the diagnostics side and is read by
// the harness, never by the solver.

#include "ronm/core.hpp"
#include "ronm/extension.hpp"
#include "ronm/geometry.hpp"
#include "ronm/random.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ronm {

// ---------------------------------------------------------------- losses

struct LinearLoss {
  Vector theta;
};
/// beta ||x - x_star||_p^ell + offset
struct PowerNormLoss {
  double beta = 1.0;
  double ell = 2.0;
  double p = 2.0;
  Vector x_star;
  double offset = 0.0;
};
/// 1/2 (x - x_star)^T Q (x - x_star) + offset
struct QuadraticLoss {
  SymMatrix Q;
  Vector x_star;
  double offset = 0.0;
};

class LossSpec {
 public:
  using Kind = std::variant<LinearLoss, PowerNormLoss, QuadraticLoss>;

  /// <x, theta> on a ball; minimizer c - R theta/|theta|, modulus |theta|/R.
  static LossSpec linear(Vector theta, const ConvexBody& body) {
    body.require_bounded("LossSpec::linear");
    LossSpec s;
    const double nt = theta.norm();
    s.x_star_ = nt > 0.0 ? Vector(body.center() - body.radius() * theta / nt) : body.center();
    s.f_star_ = s.x_star_.dot(theta);
    s.G_ = nt;
    s.rho_ = nt / body.radius();
    s.kind_ = LinearLoss{std::move(theta)};
    return s;
  }

  static LossSpec power_norm(double beta, double ell, double p, Vector x_star, double offset,
                             const ConvexBody& body) {
    if (!(beta > 0.0)) throw ConfigError("PowerNorm: beta must be positive");
    if (!(ell >= 1.0 && ell <= 2.0)) throw ConfigError("PowerNorm: ell must lie in [1, 2]");
    if (!(p > 1.0 && p <= 2.0)) throw ConfigError("PowerNorm: p must lie in (1, 2]");
    if (x_star.size() != body.dim()) throw ConfigError("PowerNorm: x_star has wrong dimension");
    if (!body.contains(x_star, 1e-12)) throw ConfigError("PowerNorm: x_star must lie in K");
    LossSpec s;
    const double d = static_cast<double>(body.dim());
    const double dual = std::pow(d, 1.0 / p - 0.5);  // |grad ||.||_p|_2 <= dual
    if (body.bounded()) {
      const double reach = body.radius() + (x_star - body.center()).norm();
      s.G_ = beta * ell * std::pow(dual * reach, ell - 1.0) * dual;
      // f - f_star >= beta |x - x_star|_2^ell >= beta (2R)^{ell-2} |x - x_star|_2^2
      s.rho_ = 2.0 * beta * std::pow(2.0 * body.r_out(), ell - 2.0);
    } else {
      if (ell != 1.0)
        throw ConfigError("PowerNorm on WholeSpace is only Lipschitz for ell = 1");
      s.G_ = beta * dual;
      s.rho_ = 0.0;
    }
    s.beta_ = beta;
    s.x_star_ = x_star;
    s.f_star_ = offset;
    s.kind_ = PowerNormLoss{beta, ell, p, std::move(x_star), offset};
    return s;
  }

  static LossSpec quadratic(SymMatrix Q, Vector x_star, double offset, const ConvexBody& body) {
    body.require_bounded("LossSpec::quadratic");
    if (!Q.is_psd(1e-12)) throw ConfigError("Quadratic: Q must be PSD");
    if (!body.contains(x_star, 1e-12)) throw ConfigError("Quadratic: x_star must lie in K");
    LossSpec s;
    const double reach = body.radius() + (x_star - body.center()).norm();
    s.G_ = Q.max_eigenvalue() * reach;
    s.rho_ = Q.min_eigenvalue();
    s.x_star_ = x_star;
    s.f_star_ = offset;
    s.kind_ = QuadraticLoss{std::move(Q), std::move(x_star), offset};
    return s;
  }

  double operator()(const Vector& x) const {
    return std::visit(
        [&](const auto& k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, LinearLoss>) {
            return x.dot(k.theta);
          } else if constexpr (std::is_same_v<T, PowerNormLoss>) {
            return k.beta * std::pow(lp_norm(x - k.x_star, k.p), k.ell) + k.offset;
          } else {
            const Vector r = x - k.x_star;
            return 0.5 * r.dot(k.Q.matrix() * r) + k.offset;
          }
        },
        kind_);
  }

  const Kind& kind() const { return kind_; }
  const Vector& x_star() const { return x_star_; }
  double f_star() const { return f_star_; }
  /// Declared Lipschitz constant on K (on R^d for unbounded bodies).
  double G() const { return G_; }
  /// Declared quadratic-growth modulus on K.
  double rho() const { return rho_; }
  /// beta for PowerNorm losses, 0 otherwise.
  double beta() const { return beta_; }
  void override_G(double G) { G_ = G; }

  BaseLoss as_base() const {
    LossSpec copy = *this;
    return BaseLoss{[copy](const Vector& x) { return copy(x); }, G_, x_star_, f_star_};
  }

  /// Strong-convexity modulus when one is known in closed form (quadratic,
  /// or PowerNorm with ell = p = 2), otherwise 0.
  double strong_convexity() const {
    if (auto* q = std::get_if<QuadraticLoss>(&kind_)) return q->Q.min_eigenvalue();
    if (auto* pn = std::get_if<PowerNormLoss>(&kind_))
      if (pn->ell == 2.0 && pn->p == 2.0) return 2.0 * pn->beta;
    return 0.0;
  }

 private:
  LossSpec() = default;

  Kind kind_;
  Vector x_star_;
  double f_star_ = 0.0;
  double G_ = 0.0;
  double rho_ = 0.0;
  double beta_ = 0.0;
};

// ----------------------------------------------------------------- noise

enum class BaseDist { Gaussian, Rademacher, Uniform };

/// eps | X ~ |X_real - x_star| * unit draw.
struct VanishingNoise {};
/// eps = sigma(X_real) * unit draw; lipschitz is sigma's declared constant on K.
struct ScaledNoise {
  std::function<double(const Vector&)> sigma;
  double lipschitz = 1.0;
  std::string label = "custom";
};
/// Y = f(X)(1 + unit draw); needs f(x_star) = 0.
struct MultiplicativeNoise {};
struct ConstantNoise {
  double sigma0 = 0.0;
};

struct NoiseSpec {
  std::variant<VanishingNoise, ScaledNoise, MultiplicativeNoise, ConstantNoise> kind =
      VanishingNoise{};
  BaseDist base = BaseDist::Gaussian;
};

inline double draw_unit(Rng& rng, BaseDist base) {
  switch (base) {
    case BaseDist::Gaussian:
      return rng.normal();
    case BaseDist::Rademacher:
      return rng.rademacher();
    case BaseDist::Uniform:
      return rng.uniform(-1.0, 1.0);
  }
  return 0.0;
}

/// E|u1 - u2| for two independent unit draws.
inline double mean_abs_difference(BaseDist base) {
  switch (base) {
    case BaseDist::Gaussian:
      return 2.0 / std::sqrt(std::numbers::pi);
    case BaseDist::Rademacher:
      return 1.0;
    case BaseDist::Uniform:
      return 2.0 / 3.0;
  }
  return 0.0;
}

// ------------------------------------------------------- query protocol

/// Diagnostics-only record of one query. Never reaches the solver.
struct HiddenRecord {
  Vector real_action;
  double eps = 0.0;
  double instantaneous_regret = 0.0;
  int inner_queries = 1;
};

struct Observation {
  double y = 0.0;
  HiddenRecord hidden;
};

class BanditEnvironment {
 public:
  virtual ~BanditEnvironment() = default;

  /// Constrained protocol: X may be anywhere, the real action is X/pi^+(X).
  virtual Observation query(const Vector& X) = 0;
  /// Unconstrained protocol: Y = f(X) + eps with eps scaled at X itself.
  virtual Observation observe_unconstrained(const Vector& X) = 0;
  double query_unconstrained(const Vector& X) { return observe_unconstrained(X).y; }

  virtual const ConvexBody& body() const = 0;
  virtual int dim() const { return body().dim(); }
  virtual long query_count() const = 0;
  /// Environment queries consumed per learner round.
  virtual int queries_per_round() const = 0;

  // diagnostics channel
  virtual const Vector& x_star() const = 0;
  virtual double f_star() const = 0;
  virtual double true_loss(const Vector& x) const = 0;
  /// Lipschitz constant of the loss the learner effectively faces.
  virtual double learner_G() const = 0;
  /// Quadratic-growth modulus of the loss the learner effectively faces.
  virtual double learner_rho() const = 0;
  /// Noiseless value of the learner-facing loss at X.
  virtual double learner_value(const Vector& X) const = 0;
};

class Environment : public BanditEnvironment {
 public:
  Environment(ConvexBody body, LossSpec loss, NoiseSpec noise, std::uint64_t seed,
              ExtensionMode ext_mode = PlainExtension{})
      : body_(std::move(body)),
        loss_(std::move(loss)),
        noise_(std::move(noise)),
        rng_(seed, Stream::Noise),
        seed_(seed) {
    if (std::holds_alternative<MultiplicativeNoise>(noise_.kind) &&
        std::abs(loss_.f_star()) > 1e-12)
      throw ConfigError("multiplicative noise requires f(x_star) = 0");
    if (auto* c = std::get_if<ConstantNoise>(&noise_.kind); c && c->sigma0 < 0.0)
      throw ConfigError("constant noise: sigma0 must be >= 0");
    if (body_.bounded()) ext_.emplace(loss_.as_base(), body_, ext_mode);
  }

  /// Noise scale sigma(x) at a real action.
  double noise_scale(const Vector& x) const {
    return std::visit(
        [&](const auto& k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, VanishingNoise>)
            return (x - loss_.x_star()).norm();
          else if constexpr (std::is_same_v<T, ScaledNoise>)
            return k.sigma(x);
          else if constexpr (std::is_same_v<T, MultiplicativeNoise>)
            return loss_(x);
          else
            return k.sigma0;
        },
        noise_.kind);
  }

  /// Lipschitz constant of sigma(.) on K.
  double noise_scale_lipschitz() const {
    return std::visit(
        [&](const auto& k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, VanishingNoise>)
            return 1.0;
          else if constexpr (std::is_same_v<T, ScaledNoise>)
            return k.lipschitz;
          else if constexpr (std::is_same_v<T, MultiplicativeNoise>)
            return loss_.G();
          else
            return 0.0;
        },
        noise_.kind);
  }

  /// Raw bandit feedback at a real action: f(x) + sigma(x) * unit draw.
  Observation raw_query(const Vector& real_action) {
    ++query_count_;
    const double eps = noise_scale(real_action) * draw_unit(rng_, noise_.base);
    const double f = loss_(real_action);
    return {f + eps, HiddenRecord{real_action, eps, f - loss_.f_star(), 1}};
  }

  Observation query(const Vector& X) override {
    if (!body_.bounded()) return observe_unconstrained(X);
    const double pp = ext_->gauge_plus(X);
    Observation obs = raw_query(X / pp);
    obs.y = learner_feedback(*ext_, X, obs.hidden.eps);
    return obs;
  }

  Observation observe_unconstrained(const Vector& X) override {
    if (body_.bounded())
      throw UnsupportedError("query_unconstrained: requires a WholeSpace body");
    return raw_query(X);
  }

  const ConvexBody& body() const override { return body_; }
  long query_count() const override { return query_count_; }
  int queries_per_round() const override { return 1; }
  const Vector& x_star() const override { return loss_.x_star(); }
  double f_star() const override { return loss_.f_star(); }
  double true_loss(const Vector& x) const override { return loss_(x); }
  double learner_G() const override { return loss_.G(); }
  double learner_rho() const override { return loss_.rho(); }
  double learner_value(const Vector& X) const override {
    return ext_ ? (*ext_)(X) : loss_(X);
  }

  const LossSpec& loss() const { return loss_; }
  const NoiseSpec& noise() const { return noise_; }
  const std::optional<ExtendedLoss>& extension() const { return ext_; }
  std::uint64_t seed() const { return seed_; }

 private:
  ConvexBody body_;
  LossSpec loss_;
  NoiseSpec noise_;
  std::optional<ExtendedLoss> ext_;
  Rng rng_;
  std::uint64_t seed_;
  long query_count_ = 0;
};

/// Plays each requested action twice and reports W = |Y1 - Y2|.
///
/// From the learner's side the loss becomes c * sigma(x), c = E|u1 - u2|, and
/// the noise W - c sigma(X) is subgaussian with parameter proportional to
/// sigma(X). The learner-facing value is lifted with the convex extension of
/// c * sigma, so RONM can run on it unchanged.
class PairwiseDifferenceEnvironment : public BanditEnvironment {
 public:
  explicit PairwiseDifferenceEnvironment(std::unique_ptr<Environment> inner)
      : inner_(std::move(inner)) {
    c_ = mean_abs_difference(inner_->noise().base);
    if (inner_->body().bounded()) {
      const Environment* env = inner_.get();
      const double c = c_;
      BaseLoss eff{[env, c](const Vector& x) { return c * env->noise_scale(x); },
                   c * inner_->noise_scale_lipschitz(), inner_->x_star(), 0.0};
      eff.f_star = eff(inner_->x_star());
      ext_.emplace(std::move(eff), inner_->body());
    }
  }

  /// Effective loss c * sigma(x) seen by the learner.
  double effective_loss(const Vector& x) const { return c_ * inner_->noise_scale(x); }
  double mean_abs_difference_constant() const { return c_; }

  Observation query(const Vector& X) override {
    const double pp = ext_ ? ext_->gauge_plus(X) : 1.0;
    const Vector real = X / pp;
    const Observation a = inner_->raw_query(real);
    const Observation b = inner_->raw_query(real);
    const double w = std::abs(a.y - b.y);
    inner_actions_.push_back(real);
    inner_actions_.push_back(real);
    Observation out;
    out.y = ext_ ? pp * w + ext_->G() * ext_->R() * (pp - 1.0) : w;
    out.hidden = HiddenRecord{real, w - effective_loss(real),
                              a.hidden.instantaneous_regret + b.hidden.instantaneous_regret, 2};
    return out;
  }

  Observation observe_unconstrained(const Vector& X) override {
    if (inner_->body().bounded())
      throw UnsupportedError("query_unconstrained: requires a WholeSpace body");
    return query(X);
  }

  const ConvexBody& body() const override { return inner_->body(); }
  long query_count() const override { return inner_->query_count(); }
  int queries_per_round() const override { return 2; }
  const Vector& x_star() const override { return inner_->x_star(); }
  double f_star() const override { return inner_->f_star(); }
  double true_loss(const Vector& x) const override { return inner_->true_loss(x); }
  double learner_G() const override { return c_ * inner_->noise_scale_lipschitz(); }
  double learner_rho() const override {
    // sigma(x) inherits quadratic growth from f under multiplicative noise
    if (std::holds_alternative<MultiplicativeNoise>(inner_->noise().kind))
      return c_ * inner_->learner_rho();
    return 0.0;
  }

  double learner_value(const Vector& X) const override {
    return ext_ ? (*ext_)(X) : effective_loss(X);
  }

  /// Real actions of every inner query, in order (X_bar_t = X_{ceil(t/2)}).
  const std::vector<Vector>& inner_actions() const { return inner_actions_; }
  const Environment& inner() const { return *inner_; }

 private:
  std::unique_ptr<Environment> inner_;
  std::optional<ExtendedLoss> ext_;
  double c_ = 0.0;
  std::vector<Vector> inner_actions_;
};

inline std::unique_ptr<PairwiseDifferenceEnvironment> pairwise_difference_adapter(
    std::unique_ptr<Environment> env) {
  return std::make_unique<PairwiseDifferenceEnvironment>(std::move(env));
}

/// What the learner is allowed to call.
class FeedbackOracle {
 public:
  virtual ~FeedbackOracle() = default;
  virtual double feedback(const Vector& X) = 0;
};

/// Routes learner queries to an environment under one protocol and keeps the
/// hidden record of the latest query for the harness.
class LearnerChannel final : public FeedbackOracle {
 public:
  enum class Protocol { Extended, Unconstrained };

  LearnerChannel(BanditEnvironment& env, Protocol protocol) : env_(env), protocol_(protocol) {}

  double feedback(const Vector& X) override {
    last_ = protocol_ == Protocol::Extended ? env_.query(X) : env_.observe_unconstrained(X);
    return last_.y;
  }

  const HiddenRecord& last_hidden() const { return last_.hidden; }
  BanditEnvironment& environment() { return env_; }

 private:
  BanditEnvironment& env_;
  Protocol protocol_;
  Observation last_;
};

/// min over sampled x in K \ {x_star} of 2 (f(x) - f_star) / |x - x_star|^2.
/// Half the points are uniform in K and half on its boundary.
inline double growth_modulus_probe(const LossSpec& loss, const ConvexBody& body, long n_points,
                                   std::uint64_t seed) {
  body.require_bounded("growth_modulus_probe");
  if (n_points < 1000) throw PreconditionError("growth_modulus_probe: need n_points >= 1e3");
  Rng rng(seed, Stream::Probe);
  double best = std::numeric_limits<double>::infinity();
  for (long i = 0; i < n_points; ++i) {
    Vector x = rng.uniform_in_ball(body.center(), body.radius());
    if (i % 2 == 1) {
      const Vector dir = x - body.center();
      if (dir.norm() > 0.0) x = body.center() + body.radius() * dir / dir.norm();
    }
    const double dist2 = (x - loss.x_star()).squaredNorm();
    if (dist2 < 1e-24) continue;
    best = std::min(best, 2.0 * (loss(x) - loss.f_star()) / dist2);
  }
  return best;
}

}  // namespace ronm

#endif  // RONM_ENVIRONMENT_HPP
