#include "pauliprop/models.hpp"

#include <cmath>
#include <string>

#include "pauliprop/errors.hpp"

namespace pauliprop {

Circuit local_entangler(std::size_t n_qubits, std::size_t depth) {
  if (n_qubits < 2) throw ValidationError("local_entangler needs at least 2 qubits");
  if (depth < 1) throw ValidationError("local_entangler needs depth >= 1");
  if (n_qubits > PauliWord::kMaxQubits) throw ValidationError("too many qubits");

  Circuit c;
  c.n_qubits = n_qubits;
  std::uint32_t param = 0;
  const auto n = static_cast<std::uint32_t>(n_qubits);
  for (std::uint32_t q = 0; q < n; ++q) c.gates.push_back(Gate::ry(q, param++));
  for (std::size_t rep = 0; rep < depth; ++rep) {
    for (std::uint32_t q = 0; q + 1 < n; q += 2) c.gates.push_back(Gate::cnot(q, q + 1));
    for (std::uint32_t q = 0; q < n; ++q) c.gates.push_back(Gate::rx(q, param++));
    for (std::uint32_t q = 1; q + 1 < n; q += 2) c.gates.push_back(Gate::cnot(q, q + 1));
    for (std::uint32_t q = 0; q < n; ++q) c.gates.push_back(Gate::ry(q, param++));
  }
  c.n_params = param;
  return c;
}

void AnnniSpec::validate() const {
  if (n_spins < 1 || n_spins > PauliWord::kMaxQubits) {
    throw ValidationError("ANNNI chain length must be in 1..64, got " + std::to_string(n_spins));
  }
  if (boundary == Boundary::Periodic && n_spins < 3) {
    throw ValidationError("periodic ANNNI chain needs at least 3 spins");
  }
  if (!std::isfinite(J) || !std::isfinite(kappa) || !std::isfinite(h)) {
    throw ValidationError("ANNNI couplings must be finite");
  }
}

namespace {

IntegerObservable xx_couplings(const AnnniSpec& spec, std::size_t distance) {
  IntegerObservable out;
  const std::size_t n = spec.n_spins;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + distance;
    if (j >= n) {
      if (spec.boundary == Boundary::Open) continue;
      j %= n;
    }
    PauliWord w(n);
    w.set(i, Pauli::X);
    w.set(j, Pauli::X);
    out.push_back({1, w});
  }
  return out;
}

}  // namespace

AnnniObservables annni_observables(const AnnniSpec& spec) {
  spec.validate();
  AnnniObservables obs;
  obs.o1 = xx_couplings(spec, 1);
  obs.o2 = xx_couplings(spec, 2);
  for (std::size_t i = 0; i < spec.n_spins; ++i) {
    obs.o3.push_back({1, PauliWord::single(spec.n_spins, i, Pauli::Z)});
  }
  return obs;
}

double combine_energy(double e1, double e2, double e3, double kappa, double h, double J) {
  return J * (-e1 + kappa * e2 - h * e3);
}

PauliSum to_pauli_sum(const IntegerObservable& obs, double scale) {
  PauliSum out;
  out.reserve(obs.size());
  for (const auto& t : obs) out.push_back({scale * static_cast<double>(t.coeff), t.word});
  return out;
}

PauliSum annni_hamiltonian(const AnnniSpec& spec) {
  const AnnniObservables obs = annni_observables(spec);
  PauliSum h = to_pauli_sum(obs.o1, -spec.J);
  for (const auto& t : to_pauli_sum(obs.o2, spec.J * spec.kappa)) h.push_back(t);
  for (const auto& t : to_pauli_sum(obs.o3, -spec.J * spec.h)) h.push_back(t);
  return h;
}

}  // namespace pauliprop
