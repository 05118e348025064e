#pragma once

#include <cstddef>

#include "pauliprop/circuit.hpp"
#include "pauliprop/observable.hpp"
#include "pauliprop/pauli_word.hpp"

namespace pauliprop {

/**
 * Local entangler ansatz: an RY layer on every qubit, then per repetition
 * a CNOT ladder on (0,1),(2,3),..., an RX layer, a CNOT ladder on
 * (1,2),(3,4),... and an RY layer. Parameter ids follow gate order, so
 * n_params = n * (2 * depth + 1).
 */
Circuit local_entangler(std::size_t n_qubits, std::size_t depth);

enum class Boundary { Open, Periodic };

/// ANNNI chain H = -J sum_i (X_i X_{i+1} - kappa X_i X_{i+2} + h Z_i).
/// Open boundaries drop out-of-range couplings; periodic ones wrap.
struct AnnniSpec {
  std::size_t n_spins = 2;
  double J = 1.0;
  Boundary boundary = Boundary::Open;
  double kappa = 0.0;
  double h = 0.0;

  void validate() const;
};

/// O1 = sum X_i X_{i+1}, O2 = sum X_i X_{i+2}, O3 = sum Z_i, each entry
/// with coefficient +1. Independent of kappa and h.
struct AnnniObservables {
  IntegerObservable o1;
  IntegerObservable o2;
  IntegerObservable o3;
};

AnnniObservables annni_observables(const AnnniSpec& spec);

/**
 * Energy from the three observable expectations:
 * E = J * (-e1 + kappa * e2 - h * e3), the sign pattern of the Hamiltonian
 * above (the kappa coupling enters with a plus sign once the overall -J
 * is distributed). Pinned by tests against the dense matrix.
 */
double combine_energy(double e1, double e2, double e3, double kappa, double h, double J = 1.0);

/// The full Hamiltonian as a weighted Pauli sum, for the oracles.
PauliSum annni_hamiltonian(const AnnniSpec& spec);

/// Integer observable -> weighted Pauli sum.
PauliSum to_pauli_sum(const IntegerObservable& obs, double scale = 1.0);

}  // namespace pauliprop
