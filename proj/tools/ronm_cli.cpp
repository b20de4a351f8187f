// ronm: run, sweep, verify and fit from the command line.

#include "ronm/experiment.hpp"
#include "ronm/fit.hpp"
#include "ronm/sweep.hpp"
#include "ronm/trace_io.hpp"
#include "ronm/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace ronm;

constexpr int kExitFailure = 1;  // a run aborted, a check failed, a cell failed
constexpr int kExitUsage = 2;    // malformed input

FitWindow parse_window(const std::vector<double>& w) {
  if (w.size() != 2) throw ConfigError("--window takes two numbers lo,hi");
  return {w[0], w[1]};
}

int cmd_run(const std::string& path) {
  const ExperimentSpec spec = load_spec(path);
  const auto root = output_root();
  const ExperimentResult res = run_experiment(spec, root);
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
  for (const SeedResult& s : res.seeds) {
    if (s.trace.completed()) {
      const TraceRow& last = s.trace.rows.back();
      std::printf("seed %llu: %zu rounds, regret %s, dist_to_opt %s -> %s\n",
                  static_cast<unsigned long long>(s.seed), s.trace.rows.size(),
                  format_double(last.regret_cumulative).c_str(),
                  format_double(last.dist_to_opt).c_str(), s.csv_path.string().c_str());
    } else {
      std::printf("seed %llu: aborted after %zu rounds: %s -> %s\n",
                  static_cast<unsigned long long>(s.seed), s.trace.rows.size(),
                  s.trace.abort_reason->c_str(), s.json_path.string().c_str());
    }
    for (const auto& v : s.invariant_violations)
      std::printf("seed %llu: invariant violated: %s\n", static_cast<unsigned long long>(s.seed),
                  v.c_str());
  }
  return res.ok() ? 0 : kExitFailure;
}

int cmd_sweep(const std::string& path, const std::vector<double>& window, unsigned workers) {
  const ExperimentSpec spec = load_spec(path);
  SweepOptions opts;
  if (!window.empty()) opts.window = parse_window(window);
  opts.workers = workers;
  const auto root = output_root();
  const auto cells = run_sweep(spec, root, opts);
  const std::string csv = sweep_summary_csv(cells);
  const auto dir = root / spec.outputs;
  std::filesystem::create_directories(dir);
  const auto out = dir / (spec.name + "_summary.csv");
  write_text_file(out.string(), csv);
  std::cout << csv;
  std::cerr << "summary written to " << out.string() << "\n";
  for (const auto& c : cells)
    if (!c.ok()) return kExitFailure;
  return 0;
}

int cmd_verify(const std::string& checks, long budget, std::uint64_t seed) {
  std::vector<std::string> selection;
  if (checks.empty() || checks == "all") {
    selection = available_checks();
  } else {
    std::stringstream ss(checks);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) selection.push_back(item);
  }
  const VerifyReport rep = verify_lemmas(selection, budget, seed);
  for (const CheckRecord& c : rep.checks)
    std::printf("%-18s %s  %s %s %s (stderr %s, %ld cases, %.2fs)  [%s]\n", c.name.c_str(),
                c.pass ? "PASS" : "FAIL", format_double(c.statistic).c_str(), c.relation.c_str(),
                format_double(c.bound).c_str(), format_double(c.std_error).c_str(), c.cases,
                c.runtime_seconds, c.anchor.c_str());
  std::printf("%ld/%ld checks passed\n", rep.passed(), rep.total());
  return rep.all_pass() ? 0 : kExitFailure;
}

int cmd_fit(const std::string& path, const std::string& column, const std::vector<double>& window) {
  const std::vector<double> series = read_trace_column(path, column);
  const FitWindow w = window.empty() ? FitWindow{} : parse_window(window);
  const PowerLawFit f = fit_power_law(series, w);
  std::printf("column %s, rounds %ld..%ld (%ld points)\n", column.c_str(), f.t_first, f.t_last,
              f.points);
  std::printf("slope %s\nintercept %s\nstderr %s\n", format_double(f.slope).c_str(),
              format_double(f.intercept).c_str(), format_double(f.stderr_slope).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic convex bandits with vanishing noise: experiments and checks"};
  app.require_subcommand(1);

  std::string spec_path;
  auto* run = app.add_subcommand("run", "run every seed of an experiment spec");
  run->add_option("spec", spec_path, "experiment spec (JSON)")->required();

  std::string sweep_path;
  std::vector<double> sweep_window;
  unsigned workers = 0;
  auto* sweep = app.add_subcommand("sweep", "run the grid of a spec and summarise slopes");
  sweep->add_option("spec", sweep_path, "experiment spec with a grid section")->required();
  sweep->add_option("--window", sweep_window, "fit window as fractions lo,hi")->delimiter(',');
  sweep->add_option("--workers", workers, "worker threads (0: hardware concurrency)");

  std::string checks;
  long budget = kDefaultVerifyBudget;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "run the lemma battery");
  verify->add_option("--checks", checks, "comma-separated check names (default: all)");
  verify->add_option("--budget", budget, "Monte Carlo draws per case");
  verify->add_option("--seed", seed, "seed");

  std::string trace_path, column = "dist_to_opt";
  std::vector<double> fit_window;
  auto* fit = app.add_subcommand("fit", "fit a power law to a trace column");
  fit->add_option("trace", trace_path, "trace CSV")->required();
  fit->add_option("--column", column, "column name");
  fit->add_option("--window", fit_window, "fit window as fractions lo,hi")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(spec_path);
    if (*sweep) return cmd_sweep(sweep_path, sweep_window, workers);
    if (*verify) return cmd_verify(checks, budget, seed);
    if (*fit) return cmd_fit(trace_path, column, fit_window);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
