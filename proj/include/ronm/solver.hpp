#ifndef RONM_SOLVER_HPP
#define RONM_SOLVER_HPP

// RONM (constrained, with the eta*gamma*I regularizer) and the unconstrained
// online Newton method, plus the driver that runs them against an
// environment and records a trace.

#include "ronm/core.hpp"
#include "ronm/environment.hpp"
#include "ronm/estimator.hpp"
#include "ronm/geometry.hpp"
#include "ronm/random.hpp"
#include "ronm/schedule.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace ronm {

inline constexpr double kRepairStart = 1e-12;
inline constexpr int kRepairMaxDoublings = 40;

struct SolverState {
  long t = 1;
  Vector mu;
  SymMatrix precision;
  double last_y = 0.0;
  SolverMode mode = SolverMode::RONM;

  // precision = hessian_ledger + regularizer_total I + repair_total I
  SymMatrix hessian_ledger;  // sigma^-2 I + (eta/2) sum_u H_u
  double regularizer_total = 0.0;
  double repair_total = 0.0;
  long pd_repairs = 0;
  long first_repair_round = 0;
};

inline void check_schedule(const ConstantSchedule& s) {
  if (!(s.sigma > 0.0)) throw PreconditionError("schedule: sigma must be positive");
  if (!(s.lambda > 0.0 && s.lambda < 1.0))
    throw PreconditionError("schedule: lambda must lie in (0, 1)");
  if (!(s.eta > 0.0)) throw PreconditionError("schedule: eta must be positive");
  if (!(s.gamma >= 0.0)) throw PreconditionError("schedule: gamma must be >= 0");
}

/// mu_1 = 0, Sigma_1 = sigma^2 I, Y_0 = 0.
inline SolverState init(const ConstantSchedule& schedule, const ConvexBody& body) {
  check_schedule(schedule);
  if (schedule.mode == SolverMode::ONM_Unconstrained && body.bounded())
    throw UnsupportedError("unconstrained solver needs a WholeSpace body");
  SolverState s;
  s.mode = schedule.mode;
  s.mu = Vector::Zero(body.dim());
  s.precision = SymMatrix::identity(body.dim(), 1.0 / (schedule.sigma * schedule.sigma));
  s.hessian_ledger = s.precision;
  return s;
}

struct StepRecord {
  long t = 0;
  Vector X;
  double Y = 0.0;
  double Z = 0.0;
  double ratio = 0.0;
  bool ratio_clamped = false;
  Vector g;
  SymMatrix H;
  int repairs = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  Vector mu_next;
};

/// Raised when a round cannot be completed (repair exhausted, projection
/// failure); carries the round index.
class RunAborted : public std::runtime_error {
 public:
  RunAborted(long round, const std::string& why)
      : std::runtime_error("round " + std::to_string(round) + ": " + why), round_(round) {}
  long round() const { return round_; }

 private:
  long round_;
};

/// One round. The solver sees the environment only through `oracle`.
inline StepRecord step(SolverState& state, const ConstantSchedule& schedule,
                       const ConvexBody& body, FeedbackOracle& oracle, Rng& sampling) {
  const IterateDistribution dist(state.mu, state.precision);
  StepRecord rec;
  rec.t = state.t;
  rec.X = sample_action(dist, sampling);
  rec.Y = oracle.feedback(rec.X);
  rec.Z = rec.Y - state.last_y;

  const EstimatePair est = estimate_pair(dist, rec.X, rec.Z, schedule.lambda);
  rec.ratio = est.ratio;
  rec.ratio_clamped = est.clamped;
  rec.g = est.g;
  rec.H = est.H;

  const double eta = schedule.eta;
  SymMatrix next = state.precision;
  next.add_scaled(est.H, 0.5 * eta);
  state.hessian_ledger.add_scaled(est.H, 0.5 * eta);
  if (state.mode == SolverMode::RONM) {
    next.add_identity(eta * schedule.gamma);
    state.regularizer_total += eta * schedule.gamma;
  }

  if (!next.matrix().allFinite()) throw RunAborted(state.t, "precision update is not finite");
  Eigen::LLT<Matrix> llt(next.matrix());
  Eigen::SelfAdjointEigenSolver<Matrix> es(next.matrix(), Eigen::EigenvaluesOnly);
  if (llt.info() != Eigen::Success || !(es.eigenvalues().minCoeff() > 0.0)) {
    const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    double tau = kRepairStart * scale;
    bool ok = false;
    for (int k = 0; k <= kRepairMaxDoublings; ++k, tau *= 2.0) {
      SymMatrix trial = next;
      trial.add_identity(tau);
      llt.compute(trial.matrix());
      es.compute(trial.matrix(), Eigen::EigenvaluesOnly);
      if (llt.info() == Eigen::Success && es.eigenvalues().minCoeff() > 0.0) {
        next = trial;
        state.repair_total += tau;
        rec.repairs = k + 1;
        ok = true;
        break;
      }
    }
    if (!ok) throw RunAborted(state.t, "precision repair exhausted");
    ++state.pd_repairs;
    if (state.first_repair_round == 0) state.first_repair_round = state.t;
  }
  rec.lambda_min = es.eigenvalues().minCoeff();
  rec.lambda_max = es.eigenvalues().maxCoeff();

  const Vector target = state.mu - eta * llt.solve(est.g);
  if (!target.allFinite()) throw RunAborted(state.t, "gradient target is not finite");
  if (state.mode == SolverMode::RONM) {
    try {
      rec.mu_next = project_ellipsoidal(body, next, target);
    } catch (const ConvergenceError& e) {
      throw RunAborted(state.t, e.what());
    }
  } else {
    rec.mu_next = target;
  }

  state.precision = std::move(next);
  state.mu = rec.mu_next;
  state.last_y = rec.Y;
  ++state.t;
  return rec;
}

// ----------------------------------------------------- stopping diagnostics

struct StoppingFlags {
  double F = 0.0;        // 1/2 |mu - x_star|^2_P
  double F_bound = 0.0;  // 1/(2 lambda^2 L^2)
  bool a = true;
  bool b = true;
  std::optional<bool> c;  // unset when not evaluated
};

/// Conditions (a) and (b) exactly; (c) when a running estimate of
/// Sigma_bar^{-1} is supplied, with `slack` absorbing its Monte Carlo error.
inline StoppingFlags stopping_conditions(const SolverState& state,
                                         const ConstantSchedule& schedule, const Vector& x_star,
                                         const SymMatrix* sigma_bar_inv = nullptr,
                                         double slack = 0.0) {
  StoppingFlags f;
  const Vector diff = state.mu - x_star;
  f.F = 0.5 * diff.dot(state.precision.matrix() * diff);
  f.F_bound = 1.0 / (2.0 * schedule.lambda * schedule.lambda * schedule.L * schedule.L);
  f.a = f.F <= f.F_bound;
  f.b = state.precision.is_pd();
  if (sigma_bar_inv) {
    const Matrix& P = state.precision.matrix();
    const Matrix& S = sigma_bar_inv->matrix();
    const double lo = SymMatrix(P - 0.5 * S).min_eigenvalue();
    const double hi = SymMatrix(1.5 * S - P).min_eigenvalue();
    f.c = lo >= -slack && hi >= -slack;
  }
  return f;
}

// ------------------------------------------------------------------ runs

enum TraceFlag : unsigned {
  kFlagPdRepair = 1u,
  kFlagRatioClamped = 2u,
  kFlagFViolation = 4u,
  kFlagMuOutsideK = 8u,
  kFlagSandwichViolation = 16u,
};

struct TraceRow {
  long t = 0;
  Vector X;  // empty unless actions are logged
  double Y = 0.0;
  double Z = 0.0;
  double R = 0.0;
  double regret_cumulative = 0.0;
  double dist_to_opt = 0.0;  // |X_t / pi^+(X_t) - x_star|
  double mu_dist = 0.0;      // |mu_{t+1} - x_star|
  double lambda_min_precision = 0.0;
  double lambda_max_precision = 0.0;
  double F = 0.0;
  unsigned flags = 0;
};

struct RunOptions {
  /// log X_t per row; defaults to d <= 4
  std::optional<bool> log_actions;
  /// Monte Carlo draws per round for the sandwich condition; off when unset
  std::optional<long> mc_budget;
};

struct Trace {
  std::vector<TraceRow> rows;
  std::uint64_t seed = 0;
  long pd_repairs = 0;
  long first_repair_round = 0;
  long ratio_clamps = 0;
  long first_F_violation = 0;
  long first_sandwich_violation = 0;
  bool sandwich_evaluated = false;
  long env_queries = 0;
  double wall_seconds = 0.0;
  std::optional<std::string> abort_reason;

  bool completed() const { return !abort_reason.has_value(); }
};

/// Runs n rounds. The solver talks to `env` through a LearnerChannel; the
/// hidden record of each query is read here, after the step, for the trace.
inline Trace run(const ConstantSchedule& schedule, BanditEnvironment& env, long n,
                 std::uint64_t seed, const RunOptions& options = {}) {
  if (n < 1) throw PreconditionError("run: n must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const ConvexBody& body = env.body();
  SolverState state = init(schedule, body);
  LearnerChannel channel(env, schedule.mode == SolverMode::RONM
                                  ? LearnerChannel::Protocol::Extended
                                  : LearnerChannel::Protocol::Unconstrained);
  Rng sampling(seed, Stream::Sampling);
  const bool log_x = options.log_actions.value_or(body.dim() <= 4);
  const Vector& x_star = env.x_star();

  Trace trace;
  trace.seed = seed;
  trace.rows.reserve(static_cast<std::size_t>(n));

  std::optional<SymMatrix> sigma_bar;
  double sandwich_var = 0.0;
  if (options.mc_budget) {
    sigma_bar = state.precision;
    trace.sandwich_evaluated = true;
  }
  const ScalarFn learner_loss = [&env](const Vector& x) { return env.learner_value(x); };

  double regret = 0.0;
  for (long i = 0; i < n; ++i) {
    if (sigma_bar) {
      const IterateDistribution dist(state.mu, state.precision);
      const MatrixEstimate h = surrogate_hessian_mc(learner_loss, dist, schedule.lambda,
                                                    *options.mc_budget,
                                                    mix_seed(seed ^ static_cast<std::uint64_t>(i)));
      sigma_bar->add_scaled(h.mean, 0.5 * schedule.eta);
      if (schedule.mode == SolverMode::RONM)
        sigma_bar->add_identity(schedule.eta * schedule.gamma);
      const double se = 0.5 * schedule.eta * h.std_error.norm();
      sandwich_var += se * se;
    }

    StepRecord rec;
    try {
      rec = step(state, schedule, body, channel, sampling);
    } catch (const RunAborted& e) {
      trace.abort_reason = e.what();
      break;
    }
    const HiddenRecord& hidden = channel.last_hidden();
    regret += hidden.instantaneous_regret;

    TraceRow row;
    row.t = rec.t;
    if (log_x) row.X = rec.X;
    row.Y = rec.Y;
    row.Z = rec.Z;
    row.R = rec.ratio;
    row.regret_cumulative = regret;
    row.dist_to_opt = (hidden.real_action - x_star).norm();
    row.mu_dist = (state.mu - x_star).norm();
    row.lambda_min_precision = rec.lambda_min;
    row.lambda_max_precision = rec.lambda_max;

    const StoppingFlags sf = stopping_conditions(state, schedule, x_star,
                                                 sigma_bar ? &*sigma_bar : nullptr,
                                                 3.0 * std::sqrt(sandwich_var));
    row.F = sf.F;
    if (rec.repairs > 0) row.flags |= kFlagPdRepair;
    if (rec.ratio_clamped) {
      row.flags |= kFlagRatioClamped;
      ++trace.ratio_clamps;
    }
    if (!sf.a) {
      row.flags |= kFlagFViolation;
      if (trace.first_F_violation == 0) trace.first_F_violation = rec.t;
    }
    if (sf.c && !*sf.c) {
      row.flags |= kFlagSandwichViolation;
      if (trace.first_sandwich_violation == 0) trace.first_sandwich_violation = rec.t;
    }
    if (body.bounded() && gauge(body, state.mu) > 1.0 + 1e-9) row.flags |= kFlagMuOutsideK;
    trace.rows.push_back(std::move(row));
  }

  trace.pd_repairs = state.pd_repairs;
  trace.first_repair_round = state.first_repair_round;
  trace.env_queries = env.query_count();
  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return trace;
}

}  // namespace ronm

#endif  // RONM_SOLVER_HPP
