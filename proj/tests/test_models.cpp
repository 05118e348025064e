#include <bit>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "pauliprop/errors.hpp"
#include "pauliprop/models.hpp"
#include "pauliprop/oracle.hpp"
#include "test_support.hpp"

namespace pauliprop {
namespace {

using C = std::complex<double>;

TEST(Models, LocalEntanglerMatchesExplicitGateList) {
  const Circuit c = local_entangler(4, 1);
  const Circuit want = testing::golden_circuit();
  EXPECT_EQ(c.n_qubits, want.n_qubits);
  EXPECT_EQ(c.n_params, want.n_params);
  EXPECT_EQ(c.gates, want.gates);
}

TEST(Models, LocalEntanglerShape) {
  for (std::size_t n : {2u, 3u, 5u, 8u}) {
    for (std::size_t d : {1u, 3u}) {
      const Circuit c = local_entangler(n, d);
      EXPECT_EQ(c.n_params, n * (2 * d + 1));
      EXPECT_EQ(c.rotation_count(), c.n_params);
      EXPECT_NO_THROW(c.validate());
      const std::size_t cnots = d * (n / 2 + (n - 1) / 2);
      EXPECT_EQ(c.gates.size(), c.n_params + cnots);
    }
  }
  EXPECT_THROW(local_entangler(1, 1), ValidationError);
  EXPECT_THROW(local_entangler(4, 0), ValidationError);
}

TEST(Models, AnnniObservableCounts) {
  AnnniSpec open{.n_spins = 6};
  auto o = annni_observables(open);
  EXPECT_EQ(o.o1.size(), 5u);
  EXPECT_EQ(o.o2.size(), 4u);
  EXPECT_EQ(o.o3.size(), 6u);
  AnnniSpec ring{.n_spins = 6, .boundary = Boundary::Periodic};
  o = annni_observables(ring);
  EXPECT_EQ(o.o1.size(), 6u);
  EXPECT_EQ(o.o2.size(), 6u);
  EXPECT_EQ(o.o3.size(), 6u);
  EXPECT_EQ(o.o1.back().word.to_string(), "XIIIIX");
  EXPECT_EQ(o.o2.back().word.to_string(), "IXIIIX");
  for (const auto& t : o.o2) EXPECT_EQ(t.coeff, 1);
}

TEST(Models, AnnniSpecValidation) {
  EXPECT_THROW((AnnniSpec{.n_spins = 0}).validate(), ValidationError);
  EXPECT_THROW((AnnniSpec{.n_spins = 2, .boundary = Boundary::Periodic}).validate(), ValidationError);
  EXPECT_THROW((AnnniSpec{.n_spins = 4, .kappa = std::nan("")}).validate(), ValidationError);
  EXPECT_NO_THROW((AnnniSpec{.n_spins = 1}).validate());
}

// Dense Hamiltonian from Kronecker products of the chain definition.
std::vector<C> annni_dense(std::size_t n, double J, double kappa, double h, bool periodic) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<C> H(dim * dim);
  auto add = [&](std::string letters, double w) {
    const auto m = testing::kron_word(letters);
    for (std::size_t i = 0; i < dim * dim; ++i) H[i] += w * m[i];
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r : {1u, 2u}) {
      if (i + r >= n && !periodic) continue;
      std::string s(n, 'I');
      s[i] = 'X';
      s[(i + r) % n] = 'X';
      add(s, r == 1 ? -J : J * kappa);
    }
    std::string z(n, 'I');
    z[i] = 'Z';
    add(z, -J * h);
  }
  return H;
}

TEST(Models, HamiltonianMatchesKroneckerConstruction) {
  for (bool periodic : {false, true}) {
    for (std::size_t n : {3u, 4u, 5u}) {
      AnnniSpec spec{.n_spins = n, .J = 1.3, .boundary = periodic ? Boundary::Periodic : Boundary::Open,
                     .kappa = 0.45, .h = 0.8};
      const auto got = dense_matrix(annni_hamiltonian(spec), n);
      const auto want = annni_dense(n, spec.J, spec.kappa, spec.h, periodic);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t i = 0; i < got.size(); ++i) ASSERT_LT(std::abs(got[i] - want[i]), 1e-14);
    }
  }
}

TEST(Models, CombineEnergyMatchesHamiltonianExpectation) {
  std::mt19937_64 rng(10);
  for (bool periodic : {false, true}) {
    const std::size_t n = 5;
    AnnniSpec spec{.n_spins = n, .J = 0.7, .boundary = periodic ? Boundary::Periodic : Boundary::Open,
                   .kappa = 0.6, .h = 1.4};
    const Circuit c = local_entangler(n, 2);
    const auto obs = annni_observables(spec);
    for (int s = 0; s < 10; ++s) {
      const auto t = testing::random_angles(rng, c.n_params);
      const double e1 = simulate_expectation(c, t, obs.o1);
      const double e2 = simulate_expectation(c, t, obs.o2);
      const double e3 = simulate_expectation(c, t, obs.o3);
      const double full = simulate_expectation(c, t, annni_hamiltonian(spec));
      ASSERT_NEAR(combine_energy(e1, e2, e3, spec.kappa, spec.h, spec.J), full, 1e-12);
    }
  }
}

TEST(Models, ToPauliSumScales) {
  const IntegerObservable obs{{2, PauliWord::from_string("XZ")}, {-1, PauliWord::from_string("IY")}};
  const PauliSum s = to_pauli_sum(obs, 0.5);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].weight, 1.0);
  EXPECT_EQ(s[1].weight, -0.5);
  EXPECT_EQ(s[1].word.to_string(), "IY");
}

TEST(Models, SmallAndLargeAnsatzExamples) {
  const Circuit two = local_entangler(2, 1);
  const std::vector<Gate> want{Gate::ry(0, 0), Gate::ry(1, 1), Gate::cnot(0, 1), Gate::rx(0, 2),
                               Gate::rx(1, 3), Gate::ry(0, 4), Gate::ry(1, 5)};
  EXPECT_EQ(two.gates, want);
  EXPECT_EQ(two.n_params, 6u);
  EXPECT_EQ(local_entangler(12, 3).n_params, 84u);
}

TEST(Models, FourSpinObservableCounts) {
  auto o = annni_observables(AnnniSpec{.n_spins = 4});
  EXPECT_EQ(o.o1.size(), 3u);
  EXPECT_EQ(o.o2.size(), 2u);
  EXPECT_EQ(o.o3.size(), 4u);
  o = annni_observables(AnnniSpec{.n_spins = 4, .boundary = Boundary::Periodic});
  EXPECT_EQ(o.o1.size(), 4u);
  EXPECT_EQ(o.o2.size(), 4u);
  EXPECT_EQ(o.o3.size(), 4u);
}

TEST(Models, CombineEnergyExamples) {
  EXPECT_EQ(combine_energy(0, 0, 0, 0.7, -1.2), 0.0);
  // Two-spin ground state of -X0X1 has <X0X1> = 1.
  EXPECT_EQ(combine_energy(1, 0, 0, 0, 0), -1.0);
  EXPECT_EQ(combine_energy(0, 1, 0, 0.5, 0), 0.5);
  EXPECT_EQ(combine_energy(0, 0, 1, 0, 2.0), -2.0);
}

TEST(Models, TwoSpinSpectrum) {
  const auto m = dense_matrix(annni_hamiltonian(AnnniSpec{.n_spins = 2}), 2);
  const auto want = testing::kron_word("XX");
  for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(m[i], -want[i]);
  EXPECT_NEAR(ground_energy(AnnniSpec{.n_spins = 2}), -1.0, 1e-12);
}

TEST(Models, CombineEnergyMatchesDenseMatrixOnSixSpins) {
  std::mt19937_64 rng(66);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const std::size_t n = 6, dim = 64;
  const Circuit c = local_entangler(n, 1);
  for (int trial = 0; trial < 5; ++trial) {
    AnnniSpec spec{.n_spins = n, .kappa = u(rng), .h = u(rng)};
    const auto H = annni_dense(n, 1.0, spec.kappa, spec.h, false);
    const auto obs = annni_observables(spec);
    const auto t = testing::random_angles(rng, c.n_params);
    StateVector sv(n);
    sv.apply(c, t);
    const auto psi = sv.amplitudes();
    C want = 0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) want += std::conj(psi[i]) * H[i * dim + j] * psi[j];
    const double got = combine_energy(sv.expectation(to_pauli_sum(obs.o1)), sv.expectation(to_pauli_sum(obs.o2)),
                                      sv.expectation(to_pauli_sum(obs.o3)), spec.kappa, spec.h);
    EXPECT_NEAR(got, want.real(), 1e-10);
  }
}

// Diagonal of the chain Hamiltonian: basis-state expectations of O1, O2
// vanish and O3 counts spins.
TEST(Models, BasisStateExpectationsMatchDenseDiagonal) {
  for (std::size_t n : {3u, 6u, 8u}) {
    AnnniSpec spec{.n_spins = n, .kappa = 0.3, .h = 0.9};
    const auto H = annni_dense(n, 1.0, spec.kappa, spec.h, false);
    const std::size_t dim = std::size_t{1} << n;
    const auto obs = annni_observables(spec);
    for (std::size_t b = 0; b < dim; b += 7) {
      auto diag = [&](const IntegerObservable& o) {
        double e = 0;
        for (const auto& t : o) {
          if (t.word.x_mask() != 0) continue;
          e += t.coeff * ((std::popcount(b & t.word.z_mask()) % 2) ? -1.0 : 1.0);
        }
        return e;
      };
      const double got = combine_energy(diag(obs.o1), diag(obs.o2), diag(obs.o3), spec.kappa, spec.h);
      ASSERT_NEAR(got, H[b * dim + b].real(), 1e-12);
    }
  }
}

}  // namespace
}  // namespace pauliprop
