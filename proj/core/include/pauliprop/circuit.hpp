#pragma once

#include <cstddef>
#include <vector>

#include "pauliprop/gate.hpp"

namespace pauliprop {

/// Ordered gate list over `n_params` parameters, applied to |0...0> first
/// gate first.
struct Circuit {
  std::size_t n_qubits = 0;
  std::size_t n_params = 0;
  std::vector<Gate> gates;

  /// Throws ValidationError unless qubit indices are in range, CNOT
  /// control != target, and param ids cover exactly 0..n_params-1.
  void validate() const;

  std::size_t rotation_count() const;
};

}  // namespace pauliprop
