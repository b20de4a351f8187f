#ifndef RONM_SWEEP_HPP
#define RONM_SWEEP_HPP

// Cross-product sweeps over (ell, kappa, d, n, seeds) with per-cell slope fits.

#include "ronm/experiment.hpp"
#include "ronm/fit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <string>
#include <thread>
#include <vector>

namespace ronm {

struct SweepCell {
  int index = 0;
  double ell = 0.0;
  double kappa = 0.0;
  int d = 0;
  long n = 0;
  std::vector<std::uint64_t> seeds;
  ExperimentSpec spec;
};

struct CellSummary {
  SweepCell cell;
  PowerLawFit distance;
  PowerLawFit precision;
  double final_regret = 0.0;
  double final_regret_stderr = 0.0;
  std::string status = "ok";
  bool ok() const { return status == "ok"; }
};

namespace detail {

inline std::vector<double> resized(std::vector<double> v, int d, double pad = 0.0) {
  v.resize(static_cast<std::size_t>(d), pad);
  return v;
}

/// An experiment spec re-dimensioned to d: vectors are truncated or zero-padded, Q is
/// padded with its leading diagonal entry.
inline void set_dimension(ExperimentSpec& s, int d) {
  BodyConfig& b = s.env.body;
  b.dim = d;
  b.center = resized(b.center, d);
  LossConfig& l = s.env.loss;
  if (!l.theta.empty()) l.theta = resized(l.theta, d);
  if (!l.x_star.empty()) l.x_star = resized(l.x_star, d);
  if (!l.Q.empty()) {
    const double q0 = l.Q[0].empty() ? 1.0 : l.Q[0][0];
    const std::size_t old = l.Q.size();
    l.Q.resize(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < l.Q.size(); ++i) {
      l.Q[i].resize(static_cast<std::size_t>(d), 0.0);
      if (i >= old) l.Q[i][i] = q0;
    }
  }
}

}  // namespace detail

inline std::vector<SweepCell> expand_grid(const ExperimentSpec& base) {
  if (!base.grid || base.grid->empty()) throw ConfigError("sweep: grid is empty");
  const GridConfig& g = *base.grid;
  auto or_base = []<typename T>(const std::vector<T>& axis, T fallback) {
    return axis.empty() ? std::vector<T>{fallback} : axis;
  };
  const auto ells = or_base(g.ell, base.env.loss.ell);
  const auto kappas = or_base(g.kappa, base.schedule.kappa);
  const auto dims = or_base(g.d, base.env.body.dim);
  const auto ns = or_base(g.n, base.n);
  const auto seed_sets = or_base(g.seeds, base.seeds);

  std::vector<SweepCell> cells;
  for (double ell : ells)
    for (double kappa : kappas)
      for (int d : dims)
        for (long n : ns)
          for (const auto& seeds : seed_sets) {
            SweepCell c;
            c.index = static_cast<int>(cells.size());
            c.ell = ell;
            c.kappa = kappa;
            c.d = d;
            c.n = n;
            c.seeds = seeds;
            ExperimentSpec s = base;
            s.grid.reset();
            s.env.loss.ell = ell;
            if (s.schedule.ell) s.schedule.ell = ell;
            s.schedule.kappa = kappa;
            if (d != base.env.body.dim) detail::set_dimension(s, d);
            s.n = n;
            s.seeds = seeds;
            s.name = base.name + "_cell" + std::to_string(c.index);
            s.outputs = base.outputs;
            c.spec = std::move(s);
            cells.push_back(std::move(c));
          }
  return cells;
}

inline CellSummary run_cell(const SweepCell& cell, const std::filesystem::path& root,
                            FitWindow window, bool write_traces) {
  CellSummary out;
  out.cell = cell;
  try {
    ExperimentOptions opts;
    opts.write_files = write_traces;
    const ExperimentResult res = run_experiment(cell.spec, root, opts);
    std::vector<std::vector<double>> dist, prec;
    std::vector<double> regret;
    for (const SeedResult& s : res.seeds) {
      if (!s.trace.completed())
        throw std::runtime_error("seed " + std::to_string(s.seed) + ": " + *s.trace.abort_reason);
      std::vector<double> dv, pv;
      dv.reserve(s.trace.rows.size());
      pv.reserve(s.trace.rows.size());
      for (const TraceRow& r : s.trace.rows) {
        dv.push_back(r.dist_to_opt);
        pv.push_back(r.lambda_min_precision);
      }
      dist.push_back(std::move(dv));
      prec.push_back(std::move(pv));
      regret.push_back(s.trace.rows.back().regret_cumulative);
    }
    out.distance = fit_power_law(geometric_mean(dist), window);
    out.precision = fit_power_law(geometric_mean(prec), window);
    double m = 0.0;
    for (double r : regret) m += r;
    m /= static_cast<double>(regret.size());
    double v = 0.0;
    for (double r : regret) v += (r - m) * (r - m);
    out.final_regret = m;
    out.final_regret_stderr =
        regret.size() > 1 ? std::sqrt(v / static_cast<double>(regret.size() - 1) /
                                      static_cast<double>(regret.size()))
                          : 0.0;
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), ',', ';');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    out.status = "failed: " + msg;
  }
  return out;
}

struct SweepOptions {
  FitWindow window;
  bool write_traces = true;
  /// 0 picks the hardware concurrency
  unsigned workers = 0;
};

/// Cells run in a pool of std::async workers; results are stored by cell
/// index, so the summary does not depend on scheduling.
inline std::vector<CellSummary> run_sweep(const ExperimentSpec& base,
                                          const std::filesystem::path& root,
                                          const SweepOptions& opts = {}) {
  const std::vector<SweepCell> cells = expand_grid(base);
  std::vector<CellSummary> out(cells.size());
  unsigned workers = opts.workers ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cells.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < cells.size(); i = next++)
      out[i] = run_cell(cells[i], root, opts.window, opts.write_traces);
  };
  std::vector<std::future<void>> pool;
  for (unsigned w = 1; w < workers; ++w) pool.push_back(std::async(std::launch::async, worker));
  worker();
  for (auto& f : pool) f.get();
  return out;
}

inline std::string sweep_summary_csv(const std::vector<CellSummary>& cells) {
  std::string s =
      "cell,ell,kappa,d,n,seeds,distance_slope,distance_slope_stderr,precision_growth_slope,"
      "precision_growth_slope_stderr,final_regret,final_regret_stderr,status\n";
  for (const CellSummary& c : cells) {
    s += std::to_string(c.cell.index) + ',' + format_double(c.cell.ell) + ',' +
         format_double(c.cell.kappa) + ',' + std::to_string(c.cell.d) + ',' +
         std::to_string(c.cell.n) + ',' + std::to_string(c.cell.seeds.size()) + ',';
    if (c.ok()) {
      s += format_double(c.distance.slope) + ',' + format_double(c.distance.stderr_slope) + ',' +
           format_double(c.precision.slope) + ',' + format_double(c.precision.stderr_slope) +
           ',' + format_double(c.final_regret) + ',' + format_double(c.final_regret_stderr);
    } else {
      s += ",,,,,";
    }
    s += ',' + c.status + '\n';
  }
  return s;
}

}  // namespace ronm

#endif  // RONM_SWEEP_HPP
