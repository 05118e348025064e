#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "pauliprop/analysis.hpp"
#include "pauliprop/errors.hpp"
#include "pauliprop/models.hpp"
#include "pauliprop/propagator.hpp"
#include "test_support.hpp"

namespace pauliprop {
namespace {

// Direct double sum over the dropped (weight, frequency) region.
double series_bound(const BoundParams& bp, Cutoff w, Cutoff nu) {
  const double A = bp.A(), B = bp.B();
  const int K = 4000;
  double total = 0;
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      const bool drop_w = w && i > static_cast<int>(*w);
      const bool drop_nu = nu && j > static_cast<int>(*nu);
      if (!drop_w && !drop_nu) continue;
      const double t = std::pow(A, i) * std::pow(B, j);
      if (t == 0) break;
      total += t;
    }
  }
  // The closed form counts the doubly dropped corner twice.
  double corner = 0;
  if (w && nu) corner = std::pow(A, *w + 1) / (1 - A) * std::pow(B, *nu + 1) / (1 - B);
  return bp.C0 * (total + corner);
}

TEST(Bound, ClosedFormMatchesSeries) {
  const BoundParams bp{.C0 = 1.7, .alpha = 0.02, .beta = 0.01, .n_qubits = 8, .n_params = 20};
  ASSERT_TRUE(bp.valid());
  for (std::uint32_t w : {1u, 2u, 5u}) {
    for (std::uint32_t nu : {0u, 3u, 7u}) {
      const double closed = truncation_bound(bp, w, nu);
      EXPECT_NEAR(closed, series_bound(bp, w, nu), 1e-12 * std::max(1.0, closed)) << w << "," << nu;
    }
  }
  EXPECT_NEAR(truncation_bound(bp, std::nullopt, 2), series_bound(bp, std::nullopt, 2), 1e-12);
  EXPECT_EQ(truncation_bound(bp, std::nullopt, std::nullopt), 0.0);
}

TEST(Bound, DomainErrors) {
  const BoundParams bad{.C0 = 1, .alpha = 0.2, .beta = 0.01, .n_qubits = 4, .n_params = 10};
  EXPECT_FALSE(bad.valid());
  try {
    truncation_bound(bad, 1, 1);
    FAIL() << "expected a domain error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("A = 3*n*alpha < 1"), std::string::npos);
  }
  EXPECT_THROW(truncation_bound({.C0 = 1, .alpha = 0.01, .beta = 0.1, .n_qubits = 4, .n_params = 10}, 1, 1),
               ValidationError);
  EXPECT_THROW(truncation_bound({.C0 = -1, .alpha = 0.01, .beta = 0.01}, 1, 1), ValidationError);
}

TEST(Bound, MonotoneInCutoffs) {
  const BoundParams bp{.C0 = 1, .alpha = 0.03, .beta = 0.02, .n_qubits = 6, .n_params = 12};
  for (std::uint32_t w = 1; w < 10; ++w) {
    for (std::uint32_t nu = 0; nu < 10; ++nu) {
      EXPECT_LE(truncation_bound(bp, w + 1, nu), truncation_bound(bp, w, nu));
      EXPECT_LE(truncation_bound(bp, w, nu + 1), truncation_bound(bp, w, nu));
    }
  }
}

TEST(Monotonicity, FlagsIncreases) {
  CutoffTable t{{1, 2}, {1, std::nullopt}, {1.0, 0.5, 0.8, 0.0}};
  EXPECT_TRUE(monotonicity_violations(t, 0.0).empty());
  t.values[2] = 1.2;
  EXPECT_EQ(monotonicity_violations(t, 0.0).size(), 1u);
  EXPECT_TRUE(monotonicity_violations(t, 0.25).empty());
}

TEST(MaeSweep, FullCutoffIsExactAndTableMonotone) {
  const Circuit c = local_entangler(4, 1);
  IntegerObservable obs;
  for (std::size_t q = 0; q < 4; ++q) obs.push_back({1, PauliWord::single(4, q, Pauli::Z)});
  const std::vector<Cutoff> ws{1, 2, 4};
  const std::vector<Cutoff> nus{1, 3, std::nullopt};
  const MaeSweep s = mae_sweep(c, obs, ws, nus, 200, 9);
  ASSERT_EQ(s.cells.size(), 9u);
  EXPECT_LE(s.mae.at(2, 2), 1e-12);
  EXPECT_TRUE(monotonicity_violations(s.mae, 0.05).empty());
  for (const auto& cell : s.cells) EXPECT_FALSE(cell.bound.has_value());
  EXPECT_EQ(s.n_samples, 200u);
}

TEST(DecayFit, GoldenResultHasSingleFrequency) {
  const PropagatedObservable po =
      propagate(IntegerObservable{{1, PauliWord::from_string("ZIII")}}, testing::golden_circuit(), {});
  const DecayFit fit = fit_decay_constants(po, 500, 3);
  EXPECT_EQ(fit.groups.size(), 2u);
  EXPECT_TRUE(fit.alpha_identified);
  EXPECT_FALSE(fit.beta_identified);
  EXPECT_TRUE(std::isfinite(fit.rms_log_residual));
  for (const auto& g : fit.groups) EXPECT_NEAR(g.mean_abs, 1.0 / std::pow(M_PI / 2, 3) * 1.0, 0.1);
  PropagatedObservable one(1);
  one.merge_into({PauliWord::from_string("Z"), TrigMonomial{}, 1});
  EXPECT_THROW(fit_decay_constants(one, 10, 1), ValidationError);
}

TEST(Variance, MatchesPowersOfHalf) {
  const auto rows = frequency_variance_check(6, 200000, 11);
  ASSERT_EQ(rows.size(), 6u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.expected, std::ldexp(1.0, -static_cast<int>(r.nu)));
    EXPECT_LE(std::abs(r.estimate - r.expected), 4 * r.std_error) << "nu=" << r.nu;
  }
}

TEST(GradientTail, VanishesAtFullCutoffs) {
  const Circuit c = local_entangler(4, 1);
  const IntegerObservable obs{{1, PauliWord::from_string("IZII")}};
  const auto thetas = sample_uniform_angles(20, c.n_params, 4);
  const std::vector<Cutoff> ws{1, std::nullopt};
  const std::vector<Cutoff> nus{2, std::nullopt};
  const CutoffTable t = gradient_tail_check(c, obs, thetas, ws, nus);
  EXPECT_LE(t.at(1, 1), 1e-12);
  EXPECT_GT(t.at(0, 0), 0.0);
}

TEST(Sampling, UniformAnglesSeeded) {
  const auto a = sample_uniform_angles(50, 7, 1);
  EXPECT_EQ(a, sample_uniform_angles(50, 7, 1));
  for (const auto& row : a) {
    ASSERT_EQ(row.size(), 7u);
    for (double t : row) {
      ASSERT_GE(t, 0.0);
      ASSERT_LT(t, 2 * M_PI);
    }
  }
}

TEST(Bound, ArithmeticExample) {
  const std::size_t n = 4, P = 10;
  const BoundParams bp{.C0 = 1, .alpha = 0.5 / (3 * n), .beta = 0.5 / (2 * P), .n_qubits = n, .n_params = P};
  EXPECT_NEAR(truncation_bound(bp, 1, 1), 2.0, 1e-14);
  EXPECT_NEAR(truncation_bound(bp, std::nullopt, 1), 0.25 / 0.25, 1e-14);
}

TEST(Variance, SmallNuExamples) {
  const auto rows = frequency_variance_check(3, 1000000, 5);
  EXPECT_LE(std::abs(rows[0].estimate - 0.5), 3 * rows[0].std_error);
  EXPECT_LE(std::abs(rows[2].estimate - 0.125), 3 * rows[2].std_error);
}

TEST(DecayFit, ConstantTermHasExactMean) {
  PropagatedObservable po(2);
  po.merge_into({PauliWord::from_string("II"), TrigMonomial{}, -3});
  po.merge_into({PauliWord::from_string("ZI"), testing::mono({{0, 'c'}}), 1});
  po.merge_into({PauliWord::from_string("ZZ"), testing::mono({{0, 's'}, {1, 'c'}}), 1});
  const DecayFit fit = fit_decay_constants(po, 2000, 8);
  ASSERT_EQ(fit.groups.size(), 3u);
  EXPECT_EQ(fit.groups[0].weight, 0u);
  EXPECT_EQ(fit.groups[0].mean_abs, 3.0);
}

// App. A circuit, w_cut = 1: the truncated trimmed polynomial keeps only
// c8 c4 c0, so the deviation is the gradient of -s8 s1 s0.
TEST(GradientTail, WeightOneDeviationOnGoldenCircuit) {
  const Circuit c = testing::golden_circuit();
  const IntegerObservable obs{{1, PauliWord::from_string("ZIII")}};
  const auto thetas = sample_uniform_angles(100, c.n_params, 12);
  const std::vector<Cutoff> ws{1};
  const std::vector<Cutoff> nus{std::nullopt};
  const CutoffTable t = gradient_tail_check(c, obs, thetas, ws, nus);
  double want = 0;
  for (const auto& th : thetas) {
    const double s0 = std::sin(th[0]), s1 = std::sin(th[1]), s8 = std::sin(th[8]);
    const double c0 = std::cos(th[0]), c1 = std::cos(th[1]), c8 = std::cos(th[8]);
    want = std::max({want, std::abs(s8 * s1 * c0), std::abs(s8 * c1 * s0), std::abs(c8 * s1 * s0)});
  }
  EXPECT_NEAR(t.at(0, 0), want, 1e-14);
}

TEST(GradientTail, MonotoneInWeightCutoff) {
  const Circuit c = local_entangler(6, 2);
  IntegerObservable obs;
  for (std::size_t q = 0; q < 6; ++q) obs.push_back({1, PauliWord::single(6, q, Pauli::Z)});
  const auto thetas = sample_uniform_angles(100, c.n_params, 13);
  const std::vector<Cutoff> ws{1, 2, 3, 4};
  const std::vector<Cutoff> nus{std::nullopt};
  const CutoffTable t = gradient_tail_check(c, obs, thetas, ws, nus);
  EXPECT_TRUE(monotonicity_violations(t, 0.05).empty());
}

}  // namespace
}  // namespace pauliprop
