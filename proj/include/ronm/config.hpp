#ifndef RONM_CONFIG_HPP
#define RONM_CONFIG_HPP

// Experiment specs: a JSON document per experiment, parsed into plain
// structs and built into environments and schedules.

#include "ronm/core.hpp"
#include "ronm/environment.hpp"
#include "ronm/schedule.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ronm {

using json = nlohmann::ordered_json;

struct BodyConfig {
  std::string kind = "ball";  // ball | whole_space
  std::vector<double> center{0.0, 0.0};
  double radius = 1.0;
  int dim = 2;  // whole_space only
};

struct LossConfig {
  std::string kind = "linear";  // linear | power_norm | quadratic
  std::vector<double> theta;
  double beta = 1.0;
  double ell = 2.0;
  double p = 2.0;
  std::vector<double> x_star;
  double offset = 0.0;
  std::vector<std::vector<double>> Q;
  std::optional<double> G;  // overrides the declared Lipschitz constant
  /// radians per seed; theta / x_star are rotated in the (x_0, x_1) plane by
  /// seed * seed_rotation (in d = 1 the coordinate is scaled by the cosine)
  double seed_rotation = 0.0;
};

struct NoiseConfig {
  std::string kind = "vanishing";  // vanishing | scaled | multiplicative | constant
  std::string sigma_fn = "distance";  // scaled only: distance | quadratic
  double scale = 1.0;
  double sigma0 = 0.0;
  std::string base = "gaussian";  // gaussian | rademacher | uniform
};

struct ExtensionConfig {
  std::string kind = "plain";  // plain | strongly_convex
  std::optional<double> alpha;  // defaults to the loss's strong-convexity modulus
  std::optional<double> eps;    // defaults to r/2
};

struct EnvConfig {
  BodyConfig body;
  LossConfig loss;
  NoiseConfig noise;
  ExtensionConfig extension;
  bool pairwise = false;
};

struct ScheduleConfig {
  std::string preset = "practical";  // practical | theoretical
  std::string mode = "ronm";         // ronm | onm
  std::string regime = "qg";         // qg | beta_ell | beta_one
  std::optional<double> rho;         // qg; defaults to the environment's modulus
  std::optional<double> beta;        // beta_ell / beta_one; defaults to a modulus derived from the loss
  std::optional<double> ell;         // beta_ell; defaults to the loss's ell
  double kappa = 1.0;
  double sigma = 0.0;
  double lambda = 0.0;
  double eta = 0.0;
  double gamma = 0.0;
  /// "fixed" uses eta as given; "power_kappa" uses eta^{1/kappa}
  std::string eta_rule = "fixed";
  double C = 1.0;
  double C_prime = 1.0;
  double delta = 0.0;
  bool strict = false;
};

struct DiagnosticsConfig {
  std::string level = "basic";  // basic | full
  long mc_budget = 10000;
};

/// Sweep axes; an empty axis keeps the base spec's value.
struct GridConfig {
  std::vector<double> ell;
  std::vector<double> kappa;
  std::vector<int> d;
  std::vector<long> n;
  std::vector<std::vector<std::uint64_t>> seeds;

  bool empty() const {
    return ell.empty() && kappa.empty() && d.empty() && n.empty() && seeds.empty();
  }
};

struct ExperimentSpec {
  std::string name;
  EnvConfig env;
  ScheduleConfig schedule;
  long n = 1000;
  std::vector<std::uint64_t> seeds{1};
  std::string outputs = ".";
  DiagnosticsConfig diagnostics;
  std::optional<bool> log_actions;
  std::optional<GridConfig> grid;
};

// ------------------------------------------------------------- to JSON

inline json to_json(const ExperimentSpec& s) {
  json j;
  j["name"] = s.name;
  json& e = j["env"];
  if (s.env.body.kind == "ball")
    e["body"] = {{"kind", "ball"}, {"center", s.env.body.center}, {"radius", s.env.body.radius}};
  else
    e["body"] = {{"kind", "whole_space"}, {"dim", s.env.body.dim}};
  const LossConfig& l = s.env.loss;
  json lj = {{"kind", l.kind}};
  if (l.kind == "linear") {
    lj["theta"] = l.theta;
  } else if (l.kind == "power_norm") {
    lj["beta"] = l.beta;
    lj["ell"] = l.ell;
    lj["p"] = l.p;
    lj["x_star"] = l.x_star;
    lj["offset"] = l.offset;
  } else {
    lj["Q"] = l.Q;
    lj["x_star"] = l.x_star;
    lj["offset"] = l.offset;
  }
  if (l.G) lj["G"] = *l.G;
  if (l.seed_rotation != 0.0) lj["seed_rotation"] = l.seed_rotation;
  e["loss"] = lj;
  const NoiseConfig& nz = s.env.noise;
  json nj = {{"kind", nz.kind}, {"base", nz.base}};
  if (nz.kind == "scaled") {
    nj["sigma_fn"] = nz.sigma_fn;
    nj["scale"] = nz.scale;
  }
  if (nz.kind == "constant") nj["sigma0"] = nz.sigma0;
  e["noise"] = nj;
  json xj = {{"kind", s.env.extension.kind}};
  if (s.env.extension.alpha) xj["alpha"] = *s.env.extension.alpha;
  if (s.env.extension.eps) xj["eps"] = *s.env.extension.eps;
  e["extension"] = xj;
  e["pairwise"] = s.env.pairwise;

  const ScheduleConfig& c = s.schedule;
  json sj = {{"preset", c.preset}, {"mode", c.mode}, {"regime", c.regime}};
  if (c.rho) sj["rho"] = *c.rho;
  if (c.beta) sj["beta"] = *c.beta;
  if (c.ell) sj["ell"] = *c.ell;
  sj["kappa"] = c.kappa;
  sj["sigma"] = c.sigma;
  sj["lambda"] = c.lambda;
  sj["eta"] = c.eta;
  sj["gamma"] = c.gamma;
  sj["eta_rule"] = c.eta_rule;
  sj["C"] = c.C;
  sj["C_prime"] = c.C_prime;
  sj["delta"] = c.delta;
  sj["strict"] = c.strict;
  j["schedule"] = sj;
  j["n"] = s.n;
  j["seeds"] = s.seeds;
  j["outputs"] = s.outputs;
  j["diagnostics"] = {{"level", s.diagnostics.level}, {"mc_budget", s.diagnostics.mc_budget}};
  if (s.log_actions) j["log_actions"] = *s.log_actions;
  if (s.grid) {
    json g = json::object();
    if (!s.grid->ell.empty()) g["ell"] = s.grid->ell;
    if (!s.grid->kappa.empty()) g["kappa"] = s.grid->kappa;
    if (!s.grid->d.empty()) g["d"] = s.grid->d;
    if (!s.grid->n.empty()) g["n"] = s.grid->n;
    if (!s.grid->seeds.empty()) g["seeds"] = s.grid->seeds;
    j["grid"] = g;
  }
  return j;
}

// ----------------------------------------------------------- from JSON

namespace detail {

/// Typed field access that names the offending field on failure.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  bool has(const char* key) const { return j_.contains(key); }

  template <typename T>
  T get(const char* key) const {
    if (!j_.contains(key)) throw ConfigError("missing field " + where(key));
    return as<T>(key);
  }
  template <typename T>
  T get_or(const char* key, T fallback) const {
    return j_.contains(key) ? as<T>(key) : fallback;
  }
  template <typename T>
  std::optional<T> maybe(const char* key) const {
    if (!j_.contains(key)) return std::nullopt;
    return as<T>(key);
  }
  Reader child(const char* key) const {
    if (!j_.contains(key)) throw ConfigError("missing section " + where(key));
    if (!j_.at(key).is_object()) throw ConfigError("field " + where(key) + " must be an object");
    return Reader(j_.at(key), where(key));
  }
  Reader child_or_empty(const char* key) const {
    static const json empty = json::object();
    if (!j_.contains(key)) return Reader(empty, where(key));
    return child(key);
  }
  void reject_unknown(std::initializer_list<const char*> known) const {
    std::set<std::string> k(known.begin(), known.end());
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!k.count(it.key())) throw ConfigError("unknown field " + where(it.key().c_str()));
  }
  std::string where(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  template <typename T>
  T as(const char* key) const {
    try {
      return j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("field " + where(key) + " has the wrong type");
    }
  }

  const json& j_;
  std::string path_;
};

inline void require_one_of(const std::string& value, std::initializer_list<const char*> options,
                           const std::string& field) {
  for (const char* o : options)
    if (value == o) return;
  std::string msg = "field " + field + " must be one of:";
  for (const char* o : options) msg += std::string(" ") + o;
  throw ConfigError(msg);
}

}  // namespace detail

inline ExperimentSpec spec_from_json(const json& j) {
  using detail::Reader;
  if (!j.is_object()) throw ConfigError("top level must be an object");
  Reader top(j, "");
  top.reject_unknown({"name", "env", "schedule", "n", "seeds", "outputs", "diagnostics",
                      "log_actions", "grid"});
  ExperimentSpec s;
  s.name = top.get<std::string>("name");
  if (s.name.empty()) throw ConfigError("field name must be non-empty");

  Reader env = top.child("env");
  env.reject_unknown({"body", "loss", "noise", "extension", "pairwise"});
  Reader body = env.child("body");
  s.env.body.kind = body.get<std::string>("kind");
  detail::require_one_of(s.env.body.kind, {"ball", "whole_space"}, body.where("kind"));
  if (s.env.body.kind == "ball") {
    body.reject_unknown({"kind", "center", "radius"});
    s.env.body.center = body.get<std::vector<double>>("center");
    s.env.body.radius = body.get<double>("radius");
    s.env.body.dim = static_cast<int>(s.env.body.center.size());
  } else {
    body.reject_unknown({"kind", "dim"});
    s.env.body.dim = body.get<int>("dim");
    s.env.body.center.assign(s.env.body.dim, 0.0);
  }

  Reader loss = env.child("loss");
  LossConfig& l = s.env.loss;
  l.kind = loss.get<std::string>("kind");
  detail::require_one_of(l.kind, {"linear", "power_norm", "quadratic"}, loss.where("kind"));
  if (l.kind == "linear") {
    loss.reject_unknown({"kind", "theta", "G", "seed_rotation"});
    l.theta = loss.get<std::vector<double>>("theta");
  } else if (l.kind == "power_norm") {
    loss.reject_unknown({"kind", "beta", "ell", "p", "x_star", "offset", "G", "seed_rotation"});
    l.beta = loss.get<double>("beta");
    l.ell = loss.get<double>("ell");
    l.p = loss.get_or<double>("p", 2.0);
    l.x_star = loss.get<std::vector<double>>("x_star");
    l.offset = loss.get_or<double>("offset", 0.0);
  } else {
    loss.reject_unknown({"kind", "Q", "x_star", "offset", "G", "seed_rotation"});
    l.Q = loss.get<std::vector<std::vector<double>>>("Q");
    l.x_star = loss.get<std::vector<double>>("x_star");
    l.offset = loss.get_or<double>("offset", 0.0);
  }
  l.G = loss.maybe<double>("G");
  l.seed_rotation = loss.get_or<double>("seed_rotation", 0.0);

  Reader noise = env.child_or_empty("noise");
  noise.reject_unknown({"kind", "sigma_fn", "scale", "sigma0", "base"});
  NoiseConfig& nz = s.env.noise;
  nz.kind = noise.get_or<std::string>("kind", "vanishing");
  detail::require_one_of(nz.kind, {"vanishing", "scaled", "multiplicative", "constant"},
                         noise.where("kind"));
  nz.sigma_fn = noise.get_or<std::string>("sigma_fn", "distance");
  detail::require_one_of(nz.sigma_fn, {"distance", "quadratic"}, noise.where("sigma_fn"));
  nz.scale = noise.get_or<double>("scale", 1.0);
  nz.sigma0 = noise.get_or<double>("sigma0", 0.0);
  nz.base = noise.get_or<std::string>("base", "gaussian");
  detail::require_one_of(nz.base, {"gaussian", "rademacher", "uniform"}, noise.where("base"));

  Reader ext = env.child_or_empty("extension");
  ext.reject_unknown({"kind", "alpha", "eps"});
  s.env.extension.kind = ext.get_or<std::string>("kind", "plain");
  detail::require_one_of(s.env.extension.kind, {"plain", "strongly_convex"}, ext.where("kind"));
  s.env.extension.alpha = ext.maybe<double>("alpha");
  s.env.extension.eps = ext.maybe<double>("eps");
  s.env.pairwise = env.get_or<bool>("pairwise", false);

  Reader sch = top.child("schedule");
  sch.reject_unknown({"preset", "mode", "regime", "rho", "beta", "ell", "kappa", "sigma",
                      "lambda", "eta", "gamma", "eta_rule", "C", "C_prime", "delta", "strict"});
  ScheduleConfig& c = s.schedule;
  c.preset = sch.get_or<std::string>("preset", "practical");
  detail::require_one_of(c.preset, {"practical", "theoretical"}, sch.where("preset"));
  c.mode = sch.get_or<std::string>("mode", "ronm");
  detail::require_one_of(c.mode, {"ronm", "onm"}, sch.where("mode"));
  c.regime = sch.get_or<std::string>("regime", "qg");
  detail::require_one_of(c.regime, {"qg", "beta_ell", "beta_one"}, sch.where("regime"));
  c.rho = sch.maybe<double>("rho");
  c.beta = sch.maybe<double>("beta");
  c.ell = sch.maybe<double>("ell");
  c.kappa = sch.get_or<double>("kappa", 1.0);
  c.sigma = sch.get_or<double>("sigma", 0.0);
  c.lambda = sch.get_or<double>("lambda", 0.0);
  c.eta = sch.get_or<double>("eta", 0.0);
  c.gamma = sch.get_or<double>("gamma", 0.0);
  c.eta_rule = sch.get_or<std::string>("eta_rule", "fixed");
  detail::require_one_of(c.eta_rule, {"fixed", "power_kappa"}, sch.where("eta_rule"));
  c.C = sch.get_or<double>("C", 1.0);
  c.C_prime = sch.get_or<double>("C_prime", 1.0);
  c.delta = sch.get_or<double>("delta", 0.0);
  c.strict = sch.get_or<bool>("strict", false);

  s.n = top.get<long>("n");
  if (s.n < 1) throw ConfigError("field n must be >= 1");
  s.seeds = top.get<std::vector<std::uint64_t>>("seeds");
  if (s.seeds.empty()) throw ConfigError("field seeds must be non-empty");
  if (std::set<std::uint64_t>(s.seeds.begin(), s.seeds.end()).size() != s.seeds.size())
    throw ConfigError("field seeds must be distinct");
  s.outputs = top.get_or<std::string>("outputs", s.name);
  Reader diag = top.child_or_empty("diagnostics");
  diag.reject_unknown({"level", "mc_budget"});
  s.diagnostics.level = diag.get_or<std::string>("level", "basic");
  detail::require_one_of(s.diagnostics.level, {"basic", "full"}, diag.where("level"));
  s.diagnostics.mc_budget = diag.get_or<long>("mc_budget", 10000);
  s.log_actions = top.maybe<bool>("log_actions");
  if (top.has("grid")) {
    Reader g = top.child("grid");
    g.reject_unknown({"ell", "kappa", "d", "n", "seeds"});
    GridConfig grid;
    grid.ell = g.get_or<std::vector<double>>("ell", {});
    grid.kappa = g.get_or<std::vector<double>>("kappa", {});
    grid.d = g.get_or<std::vector<int>>("d", {});
    grid.n = g.get_or<std::vector<long>>("n", {});
    grid.seeds = g.get_or<std::vector<std::vector<std::uint64_t>>>("seeds", {});
    for (int d : grid.d)
      if (d < 1) throw ConfigError("field grid.d entries must be >= 1");
    for (long n : grid.n)
      if (n < 1) throw ConfigError("field grid.n entries must be >= 1");
    for (const auto& ss : grid.seeds)
      if (ss.empty() || std::set<std::uint64_t>(ss.begin(), ss.end()).size() != ss.size())
        throw ConfigError("field grid.seeds entries must be non-empty and distinct");
    s.grid = grid;
  }
  return s;
}

/// Parses text, reporting the line of a syntax error.
inline json parse_config_text(const std::string& text, const std::string& origin = "<config>") {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    long line = 1;
    for (std::size_t i = 0; i + 1 < upto; ++i)
      if (text[i] == '\n') ++line;
    throw ConfigError(origin + ":" + std::to_string(line) + ": syntax error: " + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ExperimentSpec load_spec(const std::string& path) {
  const json j = parse_config_text(read_text_file(path), path);
  try {
    return spec_from_json(j);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

// --------------------------------------------------------------- build

inline Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// Rotates v in the (0, 1) plane by angle; in d = 1 scales by cos(angle).
inline Vector rotate_leading_plane(Vector v, double angle) {
  if (angle == 0.0) return v;
  const double c = std::cos(angle), s = std::sin(angle);
  if (v.size() == 1) {
    v(0) *= c;
    return v;
  }
  const double a = v(0), b = v(1);
  v(0) = c * a - s * b;
  v(1) = s * a + c * b;
  return v;
}

inline ConvexBody build_body(const BodyConfig& b) {
  if (b.kind == "whole_space") return ConvexBody::whole_space(b.dim);
  try {
    return ConvexBody::ball(to_vector(b.center), b.radius);
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("env.body: ") + e.what());
  }
}

inline LossSpec build_loss(const LossConfig& l, const ConvexBody& body, std::uint64_t seed = 0) {
  const int d = body.dim();
  const double angle = l.seed_rotation * static_cast<double>(seed);
  auto check_dim = [&](const std::vector<double>& v, const char* field) {
    if (static_cast<int>(v.size()) != d)
      throw ConfigError(std::string("env.loss.") + field + " has dimension " +
                        std::to_string(v.size()) + ", body has " + std::to_string(d));
  };
  std::optional<LossSpec> out;
  try {
    if (l.kind == "linear") {
      check_dim(l.theta, "theta");
      out = LossSpec::linear(rotate_leading_plane(to_vector(l.theta), angle), body);
    } else if (l.kind == "power_norm") {
      check_dim(l.x_star, "x_star");
      out = LossSpec::power_norm(l.beta, l.ell, l.p, rotate_leading_plane(to_vector(l.x_star), angle),
                                 l.offset, body);
    } else {
      check_dim(l.x_star, "x_star");
      if (static_cast<int>(l.Q.size()) != d) throw ConfigError("env.loss.Q has wrong shape");
      Matrix Q(d, d);
      for (int i = 0; i < d; ++i) {
        if (static_cast<int>(l.Q[i].size()) != d) throw ConfigError("env.loss.Q has wrong shape");
        for (int k = 0; k < d; ++k) Q(i, k) = l.Q[i][k];
      }
      out = LossSpec::quadratic(SymMatrix(Q), rotate_leading_plane(to_vector(l.x_star), angle),
                                l.offset, body);
    }
  } catch (const UnsupportedError& e) {
    throw ConfigError(std::string("env.loss: ") + e.what());
  }
  if (l.G) out->override_G(*l.G);
  return *out;
}

inline NoiseSpec build_noise(const NoiseConfig& n, const LossSpec& loss, const ConvexBody& body) {
  NoiseSpec s;
  if (n.base == "gaussian") s.base = BaseDist::Gaussian;
  else if (n.base == "rademacher") s.base = BaseDist::Rademacher;
  else s.base = BaseDist::Uniform;
  if (n.kind == "vanishing") {
    s.kind = VanishingNoise{};
  } else if (n.kind == "multiplicative") {
    s.kind = MultiplicativeNoise{};
  } else if (n.kind == "constant") {
    s.kind = ConstantNoise{n.sigma0};
  } else {
    const Vector xs = loss.x_star();
    const double scale = n.scale;
    const double reach =
        body.bounded() ? body.radius() + (xs - body.center()).norm() : 0.0;
    if (n.sigma_fn == "distance") {
      s.kind = ScaledNoise{[xs, scale](const Vector& x) { return scale * (x - xs).norm(); },
                           scale, "distance"};
    } else {
      if (!body.bounded())
        throw ConfigError("env.noise: quadratic sigma_fn is not Lipschitz on WholeSpace");
      s.kind = ScaledNoise{
          [xs, scale](const Vector& x) { return scale * (x - xs).squaredNorm(); },
          2.0 * scale * reach, "quadratic"};
    }
  }
  return s;
}

/// The environment for one seed (wrapped by the pairwise adapter if asked).
inline std::unique_ptr<BanditEnvironment> build_environment(const EnvConfig& e,
                                                            std::uint64_t seed) {
  ConvexBody body = build_body(e.body);
  LossSpec loss = build_loss(e.loss, body, seed);
  NoiseSpec noise = build_noise(e.noise, loss, body);
  ExtensionMode mode = PlainExtension{};
  if (e.extension.kind == "strongly_convex") {
    if (!body.bounded()) throw ConfigError("env.extension: needs a bounded body");
    const double alpha = e.extension.alpha.value_or(loss.strong_convexity());
    const double eps = e.extension.eps.value_or(body.r_in() / 2.0);
    mode = StronglyConvexExtension{alpha, eps};
  }
  auto env = std::make_unique<Environment>(std::move(body), std::move(loss), std::move(noise),
                                           seed, mode);
  if (e.pairwise) return pairwise_difference_adapter(std::move(env));
  return env;
}

inline ProblemScale problem_scale(const BanditEnvironment& env, long n, double delta) {
  ProblemScale s;
  s.d = env.dim();
  s.n = n;
  s.G = env.learner_G();
  s.r = env.body().bounded() ? env.body().r_in() : 1.0;
  s.R = env.body().bounded() ? env.body().r_out() : 1.0;
  s.delta = delta;
  return s;
}

/// The learner's loss family for the regime, filling unset moduli from the
/// environment.
inline Regime build_regime(const ScheduleConfig& c, const EnvConfig& e,
                           const BanditEnvironment& env) {
  if (c.regime == "qg") {
    const double rho = c.rho.value_or(env.learner_rho());
    if (!(rho > 0.0))
      throw ConfigError("schedule.rho: the loss has no positive growth modulus; set it explicitly");
    return QGRegime{rho};
  }
  const double ell = c.regime == "beta_ell" ? c.ell.value_or(e.loss.ell) : 1.0;
  double beta = 0.0;
  if (c.beta) {
    beta = *c.beta;
  } else if (e.pairwise) {
    // the learner sees c sigma, not f
  } else if (e.loss.kind == "power_norm" && e.loss.ell == ell) {
    beta = power_norm_convexity_modulus(e.loss.beta, ell, e.loss.p, env.dim());
  } else if (e.loss.kind == "quadratic" && ell == 2.0) {
    Matrix Q(env.dim(), env.dim());
    for (int i = 0; i < env.dim(); ++i)
      for (int k = 0; k < env.dim(); ++k) Q(i, k) = e.loss.Q[i][k];
    beta = 0.5 * SymMatrix(Q).min_eigenvalue();
  }
  if (!(beta > 0.0))
    throw ConfigError("schedule.beta: no positive convexity modulus is known for this loss and "
                      "ell; set it explicitly");
  if (c.regime == "beta_ell") {
    if (!(ell > 1.0 && ell <= 2.0)) throw ConfigError("schedule.ell must lie in (1, 2]");
    return BetaEllRegime{beta, ell};
  }
  if (!(c.kappa > 0.0 && c.kappa <= 1.0)) throw ConfigError("schedule.kappa must lie in (0, 1]");
  return BetaOneRegime{beta, c.kappa};
}

inline ConstantSchedule build_schedule(const ExperimentSpec& spec, const BanditEnvironment& env) {
  const ScheduleConfig& c = spec.schedule;
  if (c.regime == "beta_one" && env.body().bounded())
    throw ConfigError(
        "schedule.regime beta_one assumes queries outside K are allowed; "
        "env.body must be whole_space");
  const Regime regime = build_regime(c, spec.env, env);
  const ProblemScale scale = problem_scale(env, spec.n, c.delta);
  ConstantSchedule s;
  if (c.preset == "theoretical") {
    try {
      s = theoretical_constants(regime, scale, c.C, c.C_prime);
    } catch (const PreconditionError& e) {
      throw ConfigError(std::string("schedule: ") + e.what());
    }
  } else {
    const SolverMode mode = c.mode == "onm" ? SolverMode::ONM_Unconstrained : SolverMode::RONM;
    const double eta = c.eta_rule == "power_kappa" ? std::pow(c.eta, 1.0 / c.kappa) : c.eta;
    s = practical_constants(mode, regime, scale, c.sigma, c.lambda, eta, c.gamma,
                            c.regime == "beta_one" ? c.kappa : 0.0);
  }
  if ((s.mode == SolverMode::ONM_Unconstrained) == env.body().bounded())
    throw ConfigError(s.mode == SolverMode::ONM_Unconstrained
                          ? "schedule.mode onm needs a whole_space body"
                          : "schedule.mode ronm needs a ball body");
  return s;
}

}  // namespace ronm

#endif  // RONM_CONFIG_HPP
