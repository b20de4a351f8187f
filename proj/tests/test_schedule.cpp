#include "ronm/schedule.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ronm;

TEST(Theoretical, QgSigma) {
  const ConstantSchedule s = theoretical_constants(QGRegime{1.0}, {2, 10000, 1.0, 1.0, 1.0, 0.0});
  EXPECT_DOUBLE_EQ(s.sigma, 1.0 / (10.0 * std::sqrt(2.0)));
  EXPECT_EQ(s.mode, SolverMode::RONM);
  EXPECT_DOUBLE_EQ(s.gamma, 1.0);
}

TEST(Theoretical, BetaEllGamma) {
  const ConstantSchedule s = theoretical_constants(BetaEllRegime{1.0, 2.0}, {2, 10000, 1.0, 1.0, 1.0, 0.0});
  EXPECT_DOUBLE_EQ(s.gamma, 2.0);
  const ConstantSchedule t = theoretical_constants(BetaEllRegime{0.5, 1.5}, {2, 10000, 1.0, 1.0, 1.0, 0.0});
  EXPECT_DOUBLE_EQ(t.gamma, std::pow(2.0, 0.5) * 0.5);
}

// Oracle: kappa = 1 collapses eta^kappa to beta / (1e7 sqrt6 H^2 d^5 L^6) with
// H = max(G, 1) and L = 1 + log max(n, d, H, 1/beta, 1/delta), written out by hand.
TEST(Theoretical, BetaOneEtaReduction) {
  const long n = 5000;
  const ConstantSchedule s = theoretical_constants(BetaOneRegime{1.0, 1.0}, {1, n, 1.0, 1.0, 1.0, 0.0});
  const double L = 1.0 + std::log(5000.0);
  const double eta = 1.0 / (1e7 * std::sqrt(6.0) * std::pow(L, 6.0));
  EXPECT_NEAR(s.eta, eta, 1e-14 * eta);
  EXPECT_DOUBLE_EQ(s.sigma, 1.0);
  EXPECT_DOUBLE_EQ(s.lambda, 1.0 / (2.0 * L));
  EXPECT_EQ(s.mode, SolverMode::ONM_Unconstrained);
  EXPECT_EQ(s.gamma, 0.0);

  // kappa = 1/2, d = 2: eta^{1/2} = beta^{3/2} / (1e7 6^{3/2} H^2 2^5 L^6)
  const ConstantSchedule h =
      theoretical_constants(BetaOneRegime{0.5, 0.5}, {2, n, 3.0, 1.0, 1.0, 0.0}, 1.0, 2.0);
  const double H = 2.0 * 3.0;
  const double Lh = 1.0 + std::log(5000.0);
  const double root = std::pow(0.5, 1.5) / (1e7 * std::pow(6.0, 1.5) * H * H * 32.0 * std::pow(Lh, 6.0));
  EXPECT_NEAR(h.eta, root * root, 1e-12 * root * root);
}

TEST(Theoretical, HAndL) {
  const ProblemScale sc{3, 1000, 4.0, 0.5, 2.0, 0.01};
  EXPECT_DOUBLE_EQ(scale_H(SolverMode::RONM, sc, 2.0), 2.0 * 8.0);
  EXPECT_DOUBLE_EQ(scale_H(SolverMode::ONM_Unconstrained, sc, 2.0), 2.0 * 4.0);
  const ConstantSchedule s = theoretical_constants(QGRegime{1e-4}, sc, 3.0, 2.0);
  // 1/rho = 1e4 is the largest argument
  EXPECT_NEAR(s.L, 3.0 * (1.0 + std::log(1e4)), 1e-12);
  const double d = 3.0;
  EXPECT_DOUBLE_EQ(s.sigma, 0.5 / (5.0 * std::sqrt(2.0) * d));
  EXPECT_NEAR(s.lambda, 1.0 / (s.H * d * std::pow(s.L, 3)), 1e-18);
  EXPECT_NEAR(s.eta, s.gamma / (100.0 * s.H * s.H * std::pow(d, 4) * std::pow(s.L, 5)), 1e-24);
}

TEST(Theoretical, Preconditions) {
  EXPECT_THROW(theoretical_constants(QGRegime{}, {0, 10, 1, 1, 1, 0}), PreconditionError);
  EXPECT_THROW(theoretical_constants(QGRegime{}, {2, 10, 1, 2, 1, 0}), PreconditionError);
  EXPECT_THROW(theoretical_constants(QGRegime{}, {2, 10, 1, 1, 1, 1.5}), PreconditionError);
  EXPECT_THROW(theoretical_constants(BetaOneRegime{1, 1.5}, {2, 10, 1, 1, 1, 0}), PreconditionError);
  EXPECT_THROW(theoretical_constants(QGRegime{}, {2, 10, 1, 1, 1, 0}, 0.5), PreconditionError);
}

TEST(Validate, TheoreticalPresetsPassWithLargeEnoughCPrime) {
  const ProblemScale sc{2, 100000, 1.0, 1.0, 1.0, 0.0};
  for (const Regime& r : {Regime{QGRegime{1.0}}, Regime{BetaEllRegime{1.0, 1.5}},
                          Regime{BetaEllRegime{1.0, 2.0}}, Regime{BetaOneRegime{1.0, 1.0}},
                          Regime{BetaOneRegime{1.0, 0.5}}}) {
    const ValidationReport rep = validate(theoretical_constants(r, sc, 1.0, 10.0));
    EXPECT_TRUE(rep.all_pass()) << regime_name(r) << ": " << rep.failures().size() << " failures";
    EXPECT_FALSE(rep.checks.empty());
  }
}

TEST(Validate, ReportsEachFailure) {
  // C' = 1 leaves H below the Lipschitz constant 2GR/r + G + 1/r = 4
  const ValidationReport rep =
      validate(theoretical_constants(QGRegime{1.0}, {2, 100000, 1.0, 1.0, 1.0, 0.0}));
  EXPECT_FALSE(rep.all_pass());
  const auto f = rep.failures();
  EXPECT_NE(std::find(f.begin(), f.end(), "2GR/r + G + 1/r <= H"), f.end());
}

TEST(Validate, PracticalScheduleFlagsLargeStep) {
  const ConstantSchedule s = practical_constants(SolverMode::RONM, QGRegime{1.0},
                                                 {2, 1000, 1.0, 1.0, 1.0, 0.0}, 0.2, 0.1, 5.0, 1.0);
  const ValidationReport rep = validate(s);
  const auto f = rep.failures();
  EXPECT_NE(std::find(f.begin(), f.end(), "eta <= 4"), f.end());
}

TEST(Practical, OnmDropsGamma) {
  const ConstantSchedule s = practical_constants(SolverMode::ONM_Unconstrained, BetaOneRegime{1.0, 1.0},
                                                 {1, 100, 1.0, 1.0, 1.0, 0.0}, 1.0, 0.1, 0.1, 3.0, 1.0);
  EXPECT_EQ(s.gamma, 0.0);
  EXPECT_EQ(s.preset, "practical");
  EXPECT_DOUBLE_EQ(s.delta, 0.01);
}

TEST(Regime, Names) {
  EXPECT_EQ(regime_name(QGRegime{}), "QG");
  EXPECT_EQ(regime_name(BetaEllRegime{}), "BetaEll");
  EXPECT_EQ(regime_name(BetaOneRegime{}), "BetaOne");
}
