#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "pauliprop/calculus.hpp"
#include "pauliprop/errors.hpp"
#include "pauliprop/optimizer.hpp"
#include "pauliprop/oracle.hpp"

namespace pauliprop {
namespace {

TEST(Adam, FirstStepsMatchHandComputation) {
  AdamConfig cfg;
  cfg.learning_rate = 0.1;
  Adam adam(cfg, 2);
  std::vector<double> theta{1.0, -2.0};
  const std::vector<double> g1{0.5, -4.0};
  adam.step(theta, g1);
  // First bias-corrected step is lr * g / (|g| + eps').
  EXPECT_NEAR(theta[0], 1.0 - 0.1, 1e-7);
  EXPECT_NEAR(theta[1], -2.0 + 0.1, 1e-7);
  const double after_first = theta[0];
  const std::vector<double> g2{0.25, 1.0};
  adam.step(theta, g2);
  const double m = (0.9 * 0.1 * 0.5 + 0.1 * 0.25) / (1 - 0.81);
  const double v = (0.999 * 0.001 * 0.25 + 0.001 * 0.0625) / (1 - 0.999 * 0.999);
  EXPECT_NEAR(theta[0], after_first - 0.1 * m / (std::sqrt(v) + 1e-8), 1e-12);
  EXPECT_EQ(adam.steps_taken(), 2u);
}

TEST(Adam, RejectsBadConfig) {
  AdamConfig cfg;
  cfg.learning_rate = -1;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = {};
  cfg.beta1 = 1.0;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = {};
  cfg.max_steps = 0;
  EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(Adam, InitialParametersSeeded) {
  AdamConfig cfg;
  EXPECT_EQ(initial_parameters(20, cfg), initial_parameters(20, cfg));
  AdamConfig other = cfg;
  other.seed += 1;
  EXPECT_NE(initial_parameters(20, cfg), initial_parameters(20, other));
}

TEST(Surrogate, MatchesStatevectorWhenUntruncated) {
  const AnnniSurrogate s = build_annni_surrogate(4, 1, Boundary::Open, {});
  const auto obs = annni_observables(s.spec);
  const std::vector<double> theta = initial_parameters(s.circuit.n_params, AdamConfig{.init_scale = 1.0});
  EXPECT_NEAR(evaluate(s.polys.p1, theta), simulate_expectation(s.circuit, theta, obs.o1), 1e-12);
  EXPECT_NEAR(evaluate(s.polys.p2, theta), simulate_expectation(s.circuit, theta, obs.o2), 1e-12);
  EXPECT_NEAR(evaluate(s.polys.p3, theta), simulate_expectation(s.circuit, theta, obs.o3), 1e-12);
  EXPECT_GT(s.propagated_terms[0], 0u);
}

TEST(Training, DeterministicAndDecreasing) {
  const AnnniSurrogate s = build_annni_surrogate(4, 1, Boundary::Open, {});
  AdamConfig cfg;
  cfg.max_steps = 300;
  const TrainTrace a = vqe_train(s.polys, 0.3, 0.5, cfg);
  const TrainTrace b = vqe_train(s.polys, 0.3, 0.5, cfg);
  EXPECT_EQ(a.steps, b.steps);
  EXPECT_EQ(a.theta, b.theta);
  ASSERT_FALSE(a.steps.empty());
  EXPECT_LT(a.final_energy, a.steps.front().energy);
  const double e0 = ground_energy(AnnniSpec{.n_spins = 4, .kappa = 0.3, .h = 0.5});
  EXPECT_GE(a.final_energy, e0 - 1e-9);
  const auto obs = annni_observables(s.spec);
  const double e1 = simulate_expectation(s.circuit, a.theta, obs.o1);
  const double e2 = simulate_expectation(s.circuit, a.theta, obs.o2);
  const double e3 = simulate_expectation(s.circuit, a.theta, obs.o3);
  EXPECT_NEAR(combine_energy(e1, e2, e3, 0.3, 0.5), a.final_energy, 1e-10);
}

TEST(Training, RejectsWrongThetaLength) {
  const AnnniSurrogate s = build_annni_surrogate(4, 1, Boundary::Open, {});
  EXPECT_THROW(vqe_train(s.polys, 0.0, 1.0, AdamConfig{}, std::vector<double>(3, 0.0)), ValidationError);
}

TEST(Sweep, SmallGridWithReferences) {
  const AnnniSurrogate s = build_annni_surrogate(4, 2, Boundary::Open, {});
  SweepConfig cfg;
  cfg.kappas = {0.0, 0.5};
  cfg.hs = {0.5, 1.5};
  cfg.adam.max_steps = 400;
  cfg.threads = 2;
  const auto pts = phase_diagram_sweep(s, cfg);
  ASSERT_EQ(pts.size(), 4u);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(pts[i].kappa, cfg.kappas[i / 2]);
    EXPECT_EQ(pts[i].h, cfg.hs[i % 2]);
    EXPECT_EQ(pts[i].seed, cfg.adam.seed + i);
    ASSERT_TRUE(pts[i].e_exact && pts[i].e_true && pts[i].rel_error);
    EXPECT_GE(*pts[i].e_true, *pts[i].e_exact - 1e-9);
    EXPECT_NEAR(*pts[i].e_true, pts[i].e_surrogate, 1e-9);
    EXPECT_LT(*pts[i].rel_error, 0.1);
  }
  SweepConfig serial = cfg;
  serial.threads = 1;
  const auto again = phase_diagram_sweep(s, serial);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(again[i].e_surrogate, pts[i].e_surrogate);
  cfg.hs.clear();
  EXPECT_THROW(phase_diagram_sweep(s, cfg), ValidationError);
}

TEST(Training, TwoSpinReachesGroundEnergy) {
  const AnnniSurrogate s = build_annni_surrogate(2, 1, Boundary::Open, {});
  const TrainTrace t = vqe_train(s.polys, 0.0, 0.0, AdamConfig{});
  EXPECT_NEAR(t.final_energy, -1.0, 1e-3);
  EXPECT_LE(t.steps.size(), 2000u);
}

TEST(Training, WindowedDescent) {
  const AnnniSurrogate s = build_annni_surrogate(4, 2, Boundary::Open, {});
  AdamConfig cfg;
  cfg.max_steps = 500;
  const TrainTrace t = vqe_train(s.polys, 0.4, 0.8, cfg);
  const std::size_t window = 50;
  double prev = 0;
  for (std::size_t start = 0; start + window <= t.steps.size(); start += window) {
    double mean = 0;
    for (std::size_t i = start; i < start + window; ++i) mean += t.steps[i].energy;
    mean /= window;
    if (start > 0) EXPECT_LE(mean, prev + 0.05 * std::abs(prev));
    prev = mean;
  }
}

TEST(Sweep, PolarizedPointIsAccurate) {
  const AnnniSurrogate s = build_annni_surrogate(8, 2, Boundary::Open, {});
  SweepConfig cfg;
  cfg.kappas = {0.0};
  cfg.hs = {2.0};
  const auto pts = phase_diagram_sweep(s, cfg);
  ASSERT_TRUE(pts[0].rel_error.has_value());
  EXPECT_LE(*pts[0].rel_error, 0.01);
}

TEST(Sweep, AboveOracleLimitHasNoReference) {
  TruncationConfig cuts;
  cuts.w_cut = 2;
  cuts.nu_cut = 4;
  const AnnniSurrogate s = build_annni_surrogate(6, 1, Boundary::Open, cuts);
  SweepConfig cfg;
  cfg.kappas = {0.2};
  cfg.hs = {0.4};
  cfg.adam.max_steps = 20;
  cfg.oracle_limit = 4;
  const auto pts = phase_diagram_sweep(s, cfg);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_FALSE(pts[0].e_exact.has_value());
  EXPECT_FALSE(pts[0].e_true.has_value());
  EXPECT_FALSE(pts[0].rel_error.has_value());
}

}  // namespace
}  // namespace pauliprop
