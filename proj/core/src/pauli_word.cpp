#include "pauliprop/pauli_word.hpp"

#include "pauliprop/errors.hpp"

namespace pauliprop {

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default:
      throw ValidationError(std::string("invalid Pauli letter '") + c + "'");
  }
}

PauliWord::PauliWord(std::size_t n_qubits) : PauliWord(n_qubits, 0, 0) {}

PauliWord::PauliWord(std::size_t n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : x_(x_mask), z_(z_mask), n_qubits_(static_cast<std::uint32_t>(n_qubits)) {
  if (n_qubits > kMaxQubits) {
    throw ValidationError("PauliWord supports at most 64 qubits, got " +
                          std::to_string(n_qubits));
  }
  const std::uint64_t valid = n_qubits == 64 ? ~0ull : ((1ull << n_qubits) - 1);
  if (((x_mask | z_mask) & ~valid) != 0) {
    throw ValidationError("PauliWord mask has bits beyond qubit count");
  }
}

PauliWord PauliWord::from_string(std::string_view letters) {
  PauliWord w(letters.size());
  for (std::size_t q = 0; q < letters.size(); ++q) w.set(q, pauli_from_char(letters[q]));
  return w;
}

PauliWord PauliWord::single(std::size_t n_qubits, std::size_t qubit, Pauli p) {
  if (qubit >= n_qubits) {
    throw ValidationError("qubit index " + std::to_string(qubit) + " out of range for " +
                          std::to_string(n_qubits) + " qubits");
  }
  PauliWord w(n_qubits);
  w.set(qubit, p);
  return w;
}

void PauliWord::set(std::size_t qubit, Pauli p) {
  const auto bits = static_cast<std::uint64_t>(p);
  x_ = (x_ & ~(1ull << qubit)) | ((bits & 1u) << qubit);
  z_ = (z_ & ~(1ull << qubit)) | (((bits >> 1) & 1u) << qubit);
}

std::string PauliWord::to_string() const {
  std::string s(n_qubits_, 'I');
  for (std::size_t q = 0; q < n_qubits_; ++q) s[q] = to_char(letter(q));
  return s;
}

}  // namespace pauliprop
