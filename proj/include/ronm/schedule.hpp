#ifndef RONM_SCHEDULE_HPP
#define RONM_SCHEDULE_HPP

// Step-size/smoothing constants for both solvers and the table of
// inequalities they are supposed to satisfy.

#include "ronm/core.hpp"
#include "ronm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

namespace ronm {

enum class SolverMode { RONM, ONM_Unconstrained };

/// rho-quadratic growth on K.
struct QGRegime {
  double rho = 1.0;
};
/// f - beta |x - x_star|^ell convex on K, 1 < ell <= 2.
struct BetaEllRegime {
  double beta = 1.0;
  double ell = 2.0;
};
/// ell = 1, unconstrained queries, kappa in (0, 1].
struct BetaOneRegime {
  double beta = 1.0;
  double kappa = 1.0;
};
using Regime = std::variant<QGRegime, BetaEllRegime, BetaOneRegime>;

inline std::string regime_name(const Regime& r) {
  if (std::holds_alternative<QGRegime>(r)) return "QG";
  if (std::holds_alternative<BetaEllRegime>(r)) return "BetaEll";
  return "BetaOne";
}

/// The problem quantities the constants depend on.
struct ProblemScale {
  int d = 1;
  long n = 1;
  double G = 1.0;
  double r = 1.0;  // inner radius (1 for the unconstrained solver)
  double R = 1.0;  // outer radius (1 for the unconstrained solver)
  double delta = 0.0;  // 0 means 1/n
};

struct ConstantSchedule {
  std::string preset = "practical";
  SolverMode mode = SolverMode::RONM;
  Regime regime = QGRegime{};
  ProblemScale scale;

  double sigma = 0.0;
  double lambda = 0.0;
  double eta = 0.0;
  double gamma = 0.0;
  double kappa = 0.0;
  double L = 0.0;
  double H = 0.0;
  double delta = 0.0;
  double C = 1.0;
  double C_prime = 1.0;
};

namespace detail {

inline double effective_delta(const ProblemScale& s) {
  return s.delta > 0.0 ? s.delta : 1.0 / static_cast<double>(std::max(1L, s.n));
}

/// Growth modulus entering L: rho, the QG modulus 2 beta (2R)^{ell-2} implied by
/// (beta, ell)-convexity, or beta itself for ell = 1.
inline double growth_for_log(const Regime& regime, const ProblemScale& s) {
  if (auto* q = std::get_if<QGRegime>(&regime)) return q->rho;
  if (auto* b = std::get_if<BetaEllRegime>(&regime))
    return 2.0 * b->beta * std::pow(2.0 * s.R, b->ell - 2.0);
  return std::get<BetaOneRegime>(regime).beta;
}

}  // namespace detail

/// H = C' max(G/r, 1/r) for RONM, C' max(G, 1) for the unconstrained solver.
inline double scale_H(SolverMode mode, const ProblemScale& s, double C_prime) {
  return mode == SolverMode::RONM ? C_prime * std::max(s.G / s.r, 1.0 / s.r)
                                  : C_prime * std::max(s.G, 1.0);
}

/// L = C [1 + log max(n, d, H, 1/growth, 1/delta)].
inline double scale_L(const Regime& regime, const ProblemScale& s, double H, double C) {
  const double m = std::max({static_cast<double>(s.n), static_cast<double>(s.d), H,
                             1.0 / detail::growth_for_log(regime, s),
                             1.0 / detail::effective_delta(s)});
  return C * (1.0 + std::log(m));
}

/// The theoretical preset. For bounded K:
///   sigma = r/(5 sqrt2 d), lambda = 1/(H d L^3), eta = gamma/(100 H^2 d^4 L^5),
///   gamma = rho, or 2^{ell-1} beta under (beta, ell)-convexity.
/// For the unconstrained ell = 1 solver:
///   sigma = 1, lambda = 1/(2L), eta^kappa = beta^{2-kappa}/(1e7 6^{d(2-kappa)/2} H^2 d^5 L^6).
inline ConstantSchedule theoretical_constants(const Regime& regime, const ProblemScale& scale,
                                              double C = 1.0, double C_prime = 1.0) {
  if (scale.d < 1) throw PreconditionError("theoretical_constants: d must be >= 1");
  if (scale.n < 1) throw PreconditionError("theoretical_constants: n must be >= 1");
  if (!(scale.r > 0.0) || scale.R < scale.r)
    throw PreconditionError("theoretical_constants: need 0 < r <= R");
  if (scale.delta != 0.0 && !(scale.delta > 0.0 && scale.delta < 1.0))
    throw PreconditionError("theoretical_constants: delta must lie in (0, 1)");
  if (C < 1.0 || C_prime < 1.0) throw PreconditionError("theoretical_constants: C, C' must be >= 1");

  ConstantSchedule s;
  s.preset = "theoretical";
  s.regime = regime;
  s.scale = scale;
  s.C = C;
  s.C_prime = C_prime;
  s.delta = detail::effective_delta(scale);
  const double d = scale.d;

  if (auto* b1 = std::get_if<BetaOneRegime>(&regime)) {
    if (!(b1->kappa > 0.0 && b1->kappa <= 1.0))
      throw PreconditionError("theoretical_constants: kappa must lie in (0, 1]");
    s.mode = SolverMode::ONM_Unconstrained;
    s.H = scale_H(s.mode, scale, C_prime);
    s.L = scale_L(regime, scale, s.H, C);
    s.sigma = 1.0;
    s.lambda = 1.0 / (2.0 * s.L);
    s.gamma = 0.0;
    s.kappa = b1->kappa;
    const double k = b1->kappa;
    const double eta_k = std::pow(b1->beta, 2.0 - k) /
                         (1e7 * std::pow(6.0, d * (2.0 - k) / 2.0) * s.H * s.H *
                          std::pow(d, 5.0) * std::pow(s.L, 6.0));
    s.eta = std::pow(eta_k, 1.0 / k);
    return s;
  }

  s.mode = SolverMode::RONM;
  s.H = scale_H(s.mode, scale, C_prime);
  s.L = scale_L(regime, scale, s.H, C);
  if (auto* q = std::get_if<QGRegime>(&regime)) {
    s.gamma = q->rho;
  } else {
    const auto& b = std::get<BetaEllRegime>(regime);
    s.gamma = std::pow(2.0, b.ell - 1.0) * b.beta;
  }
  s.sigma = scale.r / (5.0 * std::numbers::sqrt2 * d);
  s.lambda = 1.0 / (s.H * d * std::pow(s.L, 3.0));
  s.eta = s.gamma / (100.0 * s.H * s.H * std::pow(d, 4.0) * std::pow(s.L, 5.0));
  return s;
}

/// User-set sigma, lambda, eta, gamma. L and H are still derived from the
/// problem scale (C = C' = 1) so the inequality table can be reported.
inline ConstantSchedule practical_constants(SolverMode mode, const Regime& regime,
                                            const ProblemScale& scale, double sigma,
                                            double lambda, double eta, double gamma,
                                            double kappa = 0.0) {
  ConstantSchedule s;
  s.preset = "practical";
  s.mode = mode;
  s.regime = regime;
  s.scale = scale;
  s.sigma = sigma;
  s.lambda = lambda;
  s.eta = eta;
  s.gamma = mode == SolverMode::ONM_Unconstrained ? 0.0 : gamma;
  s.kappa = kappa;
  s.delta = detail::effective_delta(scale);
  s.H = scale_H(mode, scale, 1.0);
  s.L = scale_L(regime, scale, s.H, 1.0);
  return s;
}

struct ConstraintCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string relation;  // "<=", ">=", "=="
  bool pass = false;
};

struct ValidationReport {
  std::vector<ConstraintCheck> checks;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.pass) out.push_back(c.name);
    return out;
  }
};

/// Several constraints hold with equality under the theoretical preset
/// (e.g. r/(sqrt2 sigma) = 5d); comparisons allow this much relative rounding.
inline constexpr double kValidateRelTol = 1e-12;

/// Replays the constraint table for the schedule's regime.
inline ValidationReport validate(const ConstantSchedule& s) {
  ValidationReport rep;
  auto slack = [](double a, double b) {
    return kValidateRelTol * std::max(std::abs(a), std::abs(b));
  };
  auto le = [&](std::string name, double lhs, double rhs) {
    rep.checks.push_back({std::move(name), lhs, rhs, "<=", lhs <= rhs + slack(lhs, rhs)});
  };
  auto ge = [&](std::string name, double lhs, double rhs) {
    rep.checks.push_back({std::move(name), lhs, rhs, ">=", lhs + slack(lhs, rhs) >= rhs});
  };

  const double d = s.scale.d, r = s.scale.r, R = s.scale.R, G = s.scale.G;
  const double sg = s.sigma, lam = s.lambda, eta = s.eta, gam = s.gamma, L = s.L, H = s.H;
  const bool ronm = s.mode == SolverMode::RONM;
  const double lip = ronm ? 2.0 * G * R / r + G + 1.0 / r : G;
  const double h = std::max(1.0 / (sg * sg), 4.0 * lam * lam * lip * lip * d /
                                                  ((1.0 - lam) * (1.0 - lam)));

  if (ronm) {
    le("eta <= 4", eta, 4.0);
    ge("sigma^-2 >= eta*gamma", 1.0 / (sg * sg), eta * gam);
    le("h <= d^2 H^2", h, d * d * H * H);
    le("sigma^2 <= 1", sg * sg, 1.0);
    le("lambda <= d^-1/2 L^-3/2", lam, 1.0 / (std::sqrt(d) * std::pow(L, 1.5)));
    le("lambda <= d^-1 L^-2", lam, 1.0 / (d * L * L));
    le("2GR/r + G + 1/r <= H", lip, H);
    le("lambda <= 1/2", lam, 0.5);
    le("H eta lambda sigma sqrt(d) <= 1", H * eta * lam * sg * std::sqrt(d), 1.0);
    le("eta H d^2 L^2 / sqrt(eta gamma) <= 2/3", eta * H * d * d * L * L / std::sqrt(eta * gam),
       2.0 / 3.0);
    const double cap = 1.0 / (10.0 * lam * lam * L * L);
    le("R^2/(2 sigma^2) <= 1/(10 lambda^2 L^2)", R * R / (2.0 * sg * sg), cap);
    le("eta H^2 d L/(2 lambda^2 gamma) <= 1/(10 lambda^2 L^2)",
       eta * H * H * d * L / (2.0 * lam * lam * gam), cap);
    le("2 eta <= 1/(10 lambda^2 L^2)", 2.0 * eta, cap);
    le("H sqrt(eta L)/(lambda^2 sqrt(gamma)) <= 1/(10 lambda^2 L^2)",
       H * std::sqrt(eta * L) / (lam * lam * std::sqrt(gam)), cap);
    le("d L / lambda <= 1/(10 lambda^2 L^2)", d * L / lam, cap);
    ge("H/(lambda sqrt(L eta gamma)) >= 3", H / (lam * std::sqrt(L * eta * gam)), 3.0);
    le("lambda <= 1/(2 sqrt(d) L)", lam, 1.0 / (2.0 * std::sqrt(d) * L));
    le("gamma <= 8/R^2", gam, 8.0 / (R * R));

    if (auto* b = std::get_if<BetaEllRegime>(&s.regime)) {
      const double ell = b->ell, beta = b->beta;
      const double want = std::pow(2.0, ell - 1.0) * beta;
      rep.checks.push_back({"gamma == 2^{ell-1} beta", gam, want, "==",
                            std::abs(gam - want) <= slack(gam, want)});
      const double theta = std::pow((ell - 1.0) / 30.0, 2.0 / ell) * std::pow(beta, 2.0 / ell) *
                           std::pow(d, -1.0 / ell) *
                           std::pow(r / (std::numbers::sqrt2 * R), 2.0 * (d - 1.0) / ell) *
                           std::pow(eta, 2.0 / ell) * std::pow(lam, 6.0 / ell - 2.0) *
                           std::pow(L, 4.0 / ell - 2.0);
      ge("sigma^-2 >= Theta(beta, ell)", 1.0 / (sg * sg), theta);
      ge("r/(sqrt2 sigma) >= 5d", r / (std::numbers::sqrt2 * sg), 5.0 * d);
      le("lambda <= 1/(10 d L)", lam, 1.0 / (10.0 * d * L));
    }
    return rep;
  }

  const auto* b1 = std::get_if<BetaOneRegime>(&s.regime);
  const double beta = b1 ? b1->beta : 1.0;
  const double kap = s.kappa > 0.0 ? s.kappa : (b1 ? b1->kappa : 1.0);
  const double theta = std::pow(beta, 2.0 - kap) * std::pow(eta, 2.0 - kap) *
                       std::pow(6.0, -d * (2.0 - kap) / 2.0) *
                       std::exp(-(2.0 - kap) / (lam * lam * L * L)) / 32.0;
  const double J = std::max(std::sqrt(d * L), 1.0 / (lam * L));
  le("eta <= 4", eta, 4.0);
  le("lambda <= 1 - 1/sqrt2", lam, 1.0 - 1.0 / std::numbers::sqrt2);
  ge("sigma^-2 >= Theta(beta, kappa)", 1.0 / (sg * sg), theta);
  ge("sigma^-2 >= 1", 1.0 / (sg * sg), 1.0);
  ge("H J sqrt(L)/sqrt(Theta) >= 3", H * J * std::sqrt(L) / std::sqrt(theta), 3.0);
  const double cap = 1.0 / (8.0 * lam * lam * L * L);
  le("R^2/(2 sigma^2) <= 1/(8 lambda^2 L^2)", R * R / (2.0 * sg * sg), cap);
  le("d eta^2 H^2 J^2 L^3/(2 Theta) <= 1/(8 lambda^2 L^2)",
     d * eta * eta * H * H * J * J * std::pow(L, 3.0) / (2.0 * theta), cap);
  le("2 eta <= 1/(8 lambda^2 L^2)", 2.0 * eta, cap);
  le("eta H J L^{3/2}/(lambda sqrt(Theta)) <= 1/(8 lambda^2 L^2)",
     eta * H * J * std::pow(L, 1.5) / (lam * std::sqrt(theta)), cap);
  le("eta lambda d^2 H J L^3/sqrt(Theta) <= 2/3",
     eta * lam * d * d * H * J * std::pow(L, 3.0) / std::sqrt(theta), 2.0 / 3.0);
  le("h <= d^2 H^2", h, d * d * H * H);
  le("sigma^2 <= 1", sg * sg, 1.0);
  le("beta <= 2/R", beta, 2.0 / R);
  return rep;
}

}  // namespace ronm

#endif  // RONM_SCHEDULE_HPP
