#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pauliprop {

/// Single-qubit Pauli letter. The value packs the symplectic bits as
/// (x | z << 1): I=00, X=01, Z=10, Y=11.
enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/**
 * An n-qubit tensor product of {I, X, Y, Z} in symplectic form.
 *
 * Bit q of `x_mask` / `z_mask` holds the X / Z component on qubit q, so
 * (x,z) = (1,0) is X, (1,1) is Y and (0,1) is Z. Up to 64 qubits. The
 * word carries no phase; signs live in the coefficients of whatever
 * container holds it.
 */
class PauliWord {
 public:
  static constexpr std::size_t kMaxQubits = 64;

  PauliWord() = default;
  explicit PauliWord(std::size_t n_qubits);
  PauliWord(std::size_t n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  /// Parses a letter string, qubit 0 first ("ZIII" is Z on qubit 0).
  static PauliWord from_string(std::string_view letters);
  static PauliWord single(std::size_t n_qubits, std::size_t qubit, Pauli p);

  std::size_t n_qubits() const { return n_qubits_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  std::size_t weight() const {
    return static_cast<std::size_t>(__builtin_popcountll(x_ | z_));
  }
  /// True when the word has no X or Y letters, i.e. it is diagonal in the
  /// computational basis and survives projection onto |0...0>.
  bool is_diagonal() const { return x_ == 0; }
  bool is_identity() const { return (x_ | z_) == 0; }

  Pauli letter(std::size_t qubit) const {
    return static_cast<Pauli>(((x_ >> qubit) & 1u) | (((z_ >> qubit) & 1u) << 1));
  }
  void set(std::size_t qubit, Pauli p);

  /// Toggles the symplectic bits of one qubit by the pattern of `p`.
  void toggle(std::size_t qubit, Pauli p) {
    const auto bits = static_cast<std::uint64_t>(p);
    x_ ^= (bits & 1u) << qubit;
    z_ ^= ((bits >> 1) & 1u) << qubit;
  }

  std::size_t y_count() const {
    return static_cast<std::size_t>(__builtin_popcountll(x_ & z_));
  }

  std::string to_string() const;

  friend bool operator==(const PauliWord&, const PauliWord&) = default;
  friend auto operator<=>(const PauliWord& a, const PauliWord& b) {
    if (auto c = a.n_qubits_ <=> b.n_qubits_; c != 0) return c;
    if (auto c = a.x_ <=> b.x_; c != 0) return c;
    return a.z_ <=> b.z_;
  }

  template <typename H>
  friend H AbslHashValue(H h, const PauliWord& w) {
    return H::combine(std::move(h), w.x_, w.z_, w.n_qubits_);
  }

 private:
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  std::uint32_t n_qubits_ = 0;
};

/// Pauli word with a real weight; a `PauliSum` is a Hermitian operator.
struct WeightedPauli {
  double weight = 0.0;
  PauliWord word;
};
using PauliSum = std::vector<WeightedPauli>;

}  // namespace pauliprop
