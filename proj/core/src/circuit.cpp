#include "pauliprop/circuit.hpp"

#include <algorithm>
#include <string>

#include "pauliprop/errors.hpp"

namespace pauliprop {

std::string Gate::to_string() const {
  switch (type) {
    case GateType::RX: return "RX(t" + std::to_string(param) + ")_" + std::to_string(qubit);
    case GateType::RY: return "RY(t" + std::to_string(param) + ")_" + std::to_string(qubit);
    case GateType::RZ: return "RZ(t" + std::to_string(param) + ")_" + std::to_string(qubit);
    case GateType::CNOT:
      return "CNOT(" + std::to_string(qubit) + "," + std::to_string(target) + ")";
  }
  return "?";
}

void Circuit::validate() const {
  if (n_qubits == 0 || n_qubits > PauliWord::kMaxQubits) {
    throw ValidationError("circuit qubit count must be in 1..64, got " + std::to_string(n_qubits));
  }
  std::vector<bool> seen(n_params, false);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    const std::string where = "gate " + std::to_string(i) + " (" + g.to_string() + ")";
    if (g.qubit >= n_qubits) throw ValidationError(where + ": qubit index out of range");
    if (g.type == GateType::CNOT) {
      if (g.target >= n_qubits) throw ValidationError(where + ": target index out of range");
      if (g.target == g.qubit) throw ValidationError(where + ": control equals target");
    } else {
      if (g.param >= n_params) throw ValidationError(where + ": param id >= n_params");
      seen[g.param] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw ValidationError("param ids do not cover 0..n_params-1");
  }
}

std::size_t Circuit::rotation_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.is_rotation(); }));
}

}  // namespace pauliprop
