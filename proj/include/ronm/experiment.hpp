#ifndef RONM_EXPERIMENT_HPP
#define RONM_EXPERIMENT_HPP

// One experiment spec -> one trace CSV and one metadata JSON per seed.

#include "ronm/config.hpp"
#include "ronm/solver.hpp"
#include "ronm/trace_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

namespace ronm {

inline constexpr const char* kOutputRootEnv = "RONM_OUTPUT_ROOT";

/// $RONM_OUTPUT_ROOT, or the working directory.
inline std::filesystem::path output_root() {
  const char* v = std::getenv(kOutputRootEnv);
  return (v && *v) ? std::filesystem::path(v) : std::filesystem::current_path();
}

/// Conditions under which a run proceeds but the rate guarantees do not apply.
inline std::vector<std::string> spec_warnings(const ExperimentSpec& spec,
                                              const BanditEnvironment& env,
                                              const ConstantSchedule& schedule) {
  std::vector<std::string> w;
  if (spec.env.noise.kind == "constant" && spec.env.noise.sigma0 > 0.0)
    w.push_back("constant noise (sigma0 > 0) does not vanish at the optimum; outside the convergence-guarantee regime");
  if (spec.schedule.regime == "qg" && !(env.learner_rho() > 0.0))
    w.push_back("loss has no positive growth modulus on K; outside the convergence-guarantee regime");
  if (spec.env.extension.kind == "strongly_convex" && schedule.sigma > 0.0) {
    const double eps = spec.env.extension.eps.value_or(env.body().r_in() / 2.0);
    const double need = 10.0 * env.dim();
    if (eps / schedule.sigma < need)
      w.push_back("strongly convex extension: eps/sigma = " + format_double(eps / schedule.sigma) +
                  " is below 10 d = " + format_double(need));
  }
  return w;
}

/// Per-trace invariants: regret non-decreasing up to 1e-12, positive precision.
inline std::vector<std::string> trace_invariant_violations(const Trace& t) {
  std::vector<std::string> out;
  double prev = 0.0;
  for (const TraceRow& r : t.rows) {
    if (r.regret_cumulative < prev - 1e-12) {
      out.push_back("regret decreased at round " + std::to_string(r.t));
      break;
    }
    prev = r.regret_cumulative;
  }
  if (t.completed())
    for (const TraceRow& r : t.rows)
      if (!(r.lambda_min_precision > 0.0)) {
        out.push_back("nonpositive precision at round " + std::to_string(r.t));
        break;
      }
  return out;
}

struct SeedResult {
  std::uint64_t seed = 0;
  std::filesystem::path csv_path;
  std::filesystem::path json_path;
  Trace trace;
  std::vector<std::string> invariant_violations;
  bool ok() const { return trace.completed() && invariant_violations.empty(); }
};

struct ExperimentResult {
  ConstantSchedule schedule;
  ValidationReport validation;
  std::vector<std::string> warnings;
  std::vector<SeedResult> seeds;
  bool ok() const {
    for (const auto& s : seeds)
      if (!s.ok()) return false;
    return true;
  }
};

struct ExperimentOptions {
  bool write_files = true;
  /// keep full traces in the result (the sweep needs them)
  bool keep_traces = true;
};

inline RunOptions run_options(const ExperimentSpec& spec) {
  RunOptions o;
  o.log_actions = spec.log_actions;
  if (spec.diagnostics.level == "full") o.mc_budget = spec.diagnostics.mc_budget;
  return o;
}

/// Runs every seed of an experiment spec. Validation failures abort in strict mode and
/// are recorded as warnings otherwise.
inline ExperimentResult run_experiment(const ExperimentSpec& spec,
                                       const std::filesystem::path& root,
                                       const ExperimentOptions& opts = {}) {
  ExperimentResult res;
  const json echo = to_json(spec);
  const std::string spec_hash = fnv1a_hex(echo.dump());
  const std::filesystem::path dir = root / spec.outputs;
  if (opts.write_files) std::filesystem::create_directories(dir);

  bool first = true;
  for (std::uint64_t seed : spec.seeds) {
    auto env = build_environment(spec.env, seed);
    const ConstantSchedule schedule = build_schedule(spec, *env);
    if (first) {
      res.schedule = schedule;
      res.validation = validate(schedule);
      res.warnings = spec_warnings(spec, *env, schedule);
      for (const auto& f : res.validation.failures())
        res.warnings.push_back("constraint not met: " + f);
      if (spec.schedule.strict && !res.validation.all_pass()) {
        std::string msg = "strict mode: constraint validation failed:";
        for (const auto& f : res.validation.failures()) msg += " " + f;
        throw ConfigError(msg);
      }
      first = false;
    }

    SeedResult sr;
    sr.seed = seed;
    sr.trace = run(schedule, *env, spec.n, seed, run_options(spec));
    sr.invariant_violations = trace_invariant_violations(sr.trace);

    if (opts.write_files) {
      const std::string stem = spec.name + "_seed" + std::to_string(seed);
      sr.csv_path = dir / (stem + ".csv");
      sr.json_path = dir / (stem + ".json");
      write_text_file(sr.csv_path.string(), trace_csv(sr.trace));
      nlohmann::ordered_json meta;
      meta["schema_version"] = kSchemaVersion;
      meta["version"] = kVersionString;
      meta["spec_hash"] = spec_hash;
      meta["seed"] = seed;
      meta["spec"] = echo;
      meta["schedule"] = schedule_json(schedule);
      meta["validation"] = validation_json(res.validation);
      meta["warnings"] = res.warnings;
      meta["summary"] = trace_summary_json(sr.trace);
      meta["invariant_violations"] = sr.invariant_violations;
      meta["timings"] = {{"wall_seconds", sr.trace.wall_seconds}};
      write_text_file(sr.json_path.string(), meta.dump(2) + "\n");
    }
    if (!opts.keep_traces) {
      // keep only the last row for the summary
      if (!sr.trace.rows.empty()) {
        TraceRow last = sr.trace.rows.back();
        sr.trace.rows.assign(1, std::move(last));
      }
    }
    res.seeds.push_back(std::move(sr));
  }
  return res;
}

}  // namespace ronm

#endif  // RONM_EXPERIMENT_HPP
