#include "ronm/config.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace ronm;

namespace {

const char* kBase = R"({
  "name": "demo",
  "env": {
    "body": {"kind": "ball", "center": [0.0, 0.0], "radius": 1.0},
    "loss": {"kind": "linear", "theta": [0.6, 0.8]}
  },
  "schedule": {"sigma": 0.2, "lambda": 0.1, "eta": 1.0, "gamma": 1.0},
  "n": 100,
  "seeds": [1, 2]
})";

std::string error_of(const std::string& text) {
  try {
    spec_from_json(parse_config_text(text));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

json base_json() { return parse_config_text(kBase); }

}  // namespace

TEST(Config, DefaultsFilled) {
  const ExperimentSpec s = spec_from_json(base_json());
  EXPECT_EQ(s.name, "demo");
  EXPECT_EQ(s.outputs, "demo");
  EXPECT_EQ(s.env.noise.kind, "vanishing");
  EXPECT_EQ(s.env.extension.kind, "plain");
  EXPECT_EQ(s.schedule.mode, "ronm");
  EXPECT_EQ(s.schedule.preset, "practical");
  EXPECT_EQ(s.env.body.dim, 2);
  EXPECT_FALSE(s.grid.has_value());
}

TEST(Config, RoundTripIsLossless) {
  for (const auto& entry : std::filesystem::directory_iterator(RONM_SOURCE_DIR "/configs")) {
    const ExperimentSpec s = load_spec(entry.path().string());
    const json once = to_json(s);
    const json twice = to_json(spec_from_json(once));
    EXPECT_EQ(once.dump(), twice.dump()) << entry.path();
  }
  json j = base_json();
  j["env"]["loss"]["G"] = 2.5;
  j["env"]["extension"] = {{"kind", "strongly_convex"}, {"alpha", 0.3}, {"eps", 0.2}};
  j["schedule"]["rho"] = 0.5;
  j["log_actions"] = false;
  j["grid"] = {{"ell", {1.5, 2.0}}, {"seeds", {{1, 2}, {3}}}};
  const ExperimentSpec s = spec_from_json(j);
  EXPECT_EQ(to_json(s).dump(), to_json(spec_from_json(to_json(s))).dump());
  EXPECT_EQ(*s.env.loss.G, 2.5);
  EXPECT_EQ(s.grid->seeds.size(), 2u);
}

TEST(Config, SyntaxErrorNamesTheLine) {
  const std::string bad = "{\n  \"name\": \"x\",\n  \"n\": 5,,\n}";
  try {
    parse_config_text(bad, "demo.json");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("demo.json:3"), std::string::npos) << e.what();
  }
}

TEST(Config, FieldErrorsNameTheField) {
  json j = base_json();
  j["env"]["loss"]["thetta"] = {1.0, 0.0};
  EXPECT_NE(error_of(j.dump()).find("env.loss.thetta"), std::string::npos) << error_of(j.dump());

  j = base_json();
  j["env"]["noise"] = {{"kind", "loud"}};
  EXPECT_NE(error_of(j.dump()).find("env.noise.kind"), std::string::npos);

  j = base_json();
  j["n"] = "many";
  EXPECT_NE(error_of(j.dump()).find("n"), std::string::npos);

  j = base_json();
  j.erase("schedule");
  EXPECT_NE(error_of(j.dump()).find("schedule"), std::string::npos);
}

TEST(Config, SeedsMustBeNonEmptyAndDistinct) {
  json j = base_json();
  j["seeds"] = json::array();
  EXPECT_NE(error_of(j.dump()).find("seeds"), std::string::npos);
  j["seeds"] = {3, 3};
  EXPECT_NE(error_of(j.dump()).find("distinct"), std::string::npos);
  j = base_json();
  j["grid"] = {{"seeds", {{1, 1}}}};
  EXPECT_NE(error_of(j.dump()).find("grid.seeds"), std::string::npos);
}

TEST(Build, BetaOneOnBallIsRejected) {
  json j = base_json();
  j["schedule"]["regime"] = "beta_one";
  const ExperimentSpec s = spec_from_json(j);
  auto env = build_environment(s.env, 1);
  try {
    build_schedule(s, *env);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("queries outside K"), std::string::npos) << e.what();
  }
}

TEST(Build, ModeMustMatchBody) {
  json j = base_json();
  j["schedule"]["mode"] = "onm";
  j["schedule"]["regime"] = "qg";
  j["schedule"]["rho"] = 1.0;
  const ExperimentSpec s = spec_from_json(j);
  auto env = build_environment(s.env, 1);
  EXPECT_THROW(build_schedule(s, *env), ConfigError);
}

TEST(Build, SeedRotation) {
  const ConvexBody b = ConvexBody::unit_ball(2);
  LossConfig l;
  l.kind = "linear";
  l.theta = {1.0, 0.0};
  l.seed_rotation = 0.3;
  const LossSpec f = build_loss(l, b, 2);
  EXPECT_NEAR(f.x_star()(0), -std::cos(0.6), 1e-15);
  EXPECT_NEAR(f.x_star()(1), -std::sin(0.6), 1e-15);
  EXPECT_NEAR(rotate_leading_plane(make_vector({0.5}), 0.7)(0), 0.5 * std::cos(0.7), 1e-16);
}

TEST(Build, DimensionMismatch) {
  LossConfig l;
  l.kind = "power_norm";
  l.x_star = {0.0, 0.0, 0.0};
  EXPECT_THROW(build_loss(l, ConvexBody::unit_ball(2)), ConfigError);
}

TEST(Build, PairwiseAndRegimeDefaults) {
  const ExperimentSpec s = load_spec(RONM_SOURCE_DIR "/configs/a9_pairwise_multiplicative.json");
  auto env = build_environment(s.env, 1);
  EXPECT_EQ(env->queries_per_round(), 2);
  const ConstantSchedule sch = build_schedule(s, *env);
  EXPECT_NEAR(std::get<QGRegime>(sch.regime).rho, env->learner_rho(), 1e-15);
  EXPECT_NEAR(sch.scale.G, env->learner_G(), 1e-15);
}

TEST(Build, PowerKappaEtaRule) {
  ExperimentSpec s = load_spec(RONM_SOURCE_DIR "/configs/a8_sharp_onm_sweep.json");
  s.schedule.kappa = 0.5;
  auto env = build_environment(s.env, 1);
  const ConstantSchedule sch = build_schedule(s, *env);
  EXPECT_NEAR(sch.eta, 0.01, 1e-16);
  EXPECT_EQ(sch.mode, SolverMode::ONM_Unconstrained);
  EXPECT_DOUBLE_EQ(sch.kappa, 0.5);
}

TEST(Build, QgNeedsPositiveModulus) {
  json j = base_json();
  j["env"]["loss"] = {{"kind", "power_norm"}, {"beta", 1.0}, {"ell", 1.0}, {"x_star", {0.0, 0.0}}};
  j["env"]["body"] = {{"kind", "whole_space"}, {"dim", 2}};
  j["schedule"]["mode"] = "onm";
  const ExperimentSpec s = spec_from_json(j);
  auto env = build_environment(s.env, 1);
  EXPECT_THROW(build_schedule(s, *env), ConfigError);
}
