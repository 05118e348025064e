#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pauliprop/gate.hpp"
#include "pauliprop/pauli_word.hpp"
#include "pauliprop/trig_monomial.hpp"

namespace pauliprop {

/// One output term of a conjugation: sign * [trig factor] * word.
struct Branch {
  PauliWord word;
  std::optional<Trig> factor;  // factor of the gate's parameter, if any
  int sign = 1;
};

/// One or two branches. Rotations emit one unchanged branch when the
/// letter commutes with the axis and two (cos, sin) branches otherwise;
/// CNOT always emits one branch without a trig factor.
class BranchResult {
 public:
  BranchResult() = default;
  explicit BranchResult(Branch b) : branches_{std::move(b), Branch{}}, count_(1) {}
  BranchResult(Branch a, Branch b) : branches_{std::move(a), std::move(b)}, count_(2) {}

  std::size_t size() const { return count_; }
  const Branch& operator[](std::size_t i) const { return branches_[i]; }
  std::span<const Branch> branches() const { return {branches_.data(), count_}; }

 private:
  std::array<Branch, 2> branches_{};
  std::size_t count_ = 0;
};

/**
 * Heisenberg-picture conjugation G^dagger P G of a Pauli word.
 *
 * Rotations are G = exp(-i theta A / 2) with A in {X, Y, Z}; for a letter L
 * that anticommutes with A the result is cos(theta) L +/- sin(theta) L'
 * where L' = i[A, L]/2 up to sign, e.g. RY maps X -> cos X + sin Z and
 * Z -> cos Z - sin X. Observables are propagated by applying this to the
 * last gate of the circuit first, so ⟨0|U^dagger O U|0⟩ is what trimming
 * the final result yields.
 *
 * Throws ValidationError when a gate index is outside the word.
 */
BranchResult conjugate(const Gate& gate, const PauliWord& word);

/// True when `conjugate` would change `word` (branch or rewrite it).
bool gate_acts_on(const Gate& gate, const PauliWord& word);

struct RuleValidationReport {
  std::size_t cases = 0;   // (gate, input word) pairs checked
  std::size_t checks = 0;  // cases x angles
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Checks `conjugate` against explicit 4x4 matrix conjugation for RX, RY,
/// RZ on either qubit and CNOT in both orientations, over all 16 two-qubit
/// words and 20 random angles, at tolerance 1e-12.
RuleValidationReport validate_rules_against_matrices(std::uint64_t seed = 20240611);

}  // namespace pauliprop
