#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pauliprop/circuit.hpp"
#include "pauliprop/models.hpp"
#include "pauliprop/observable.hpp"
#include "pauliprop/pauli_word.hpp"

namespace pauliprop {

using Amplitude = std::complex<double>;

/// Dense 2^n statevector. Basis index bit q is qubit q. Gates follow the
/// propagator's convention: R_P(theta) = exp(-i theta P / 2).
class StateVector {
 public:
  static constexpr std::size_t kMaxQubits = 20;

  /// |0...0> on n qubits; throws ValidationError for n > kMaxQubits.
  explicit StateVector(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_qubits_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }

  void apply(const Gate& gate, std::span<const double> theta);
  void apply(const Circuit& circuit, std::span<const double> theta);

  double norm() const;
  double expectation(const PauliWord& word) const;
  double expectation(const PauliSum& op) const;

 private:
  std::size_t n_qubits_;
  std::vector<Amplitude> amps_;
};

/// out += weight * P |in>, matrix free.
void apply_pauli(const PauliWord& word, Amplitude weight, std::span<const Amplitude> in,
                 std::span<Amplitude> out);
/// out = H |in>.
void apply_pauli_sum(const PauliSum& op, std::span<const Amplitude> in, std::span<Amplitude> out);

/// ⟨0|U^dagger O U|0⟩ by forward statevector simulation.
double simulate_expectation(const Circuit& circuit, std::span<const double> theta,
                            const PauliSum& observable);
double simulate_expectation(const Circuit& circuit, std::span<const double> theta,
                            const IntegerObservable& observable);

enum class EigenMethod { Auto, Dense, Lanczos };

struct LanczosOptions {
  std::size_t subspace = 200;
  std::size_t max_restarts = 200;
  double residual_tol = 1e-8;
  std::uint64_t seed = 7;
};

/// Dense Hermitian matrix of a Pauli sum, row-major, 2^n x 2^n. n <= 12.
std::vector<Amplitude> dense_matrix(const PauliSum& op, std::size_t n_qubits);

/// Smallest eigenvalue of a Hermitian Pauli sum. Dense: full eigensolve
/// (n <= 12). Lanczos: matrix-free with full reorthogonalization and
/// explicit restarts until the Ritz residual is <= residual_tol (n <= 20).
/// Auto picks dense up to 10 qubits. Throws ValidationError for sizes out
/// of range and ConvergenceError when Lanczos runs out of restarts.
double ground_energy(const PauliSum& op, std::size_t n_qubits,
                     EigenMethod method = EigenMethod::Auto, const LanczosOptions& opts = {});
double ground_energy(const AnnniSpec& spec, EigenMethod method = EigenMethod::Auto,
                     const LanczosOptions& opts = {});

}  // namespace pauliprop
