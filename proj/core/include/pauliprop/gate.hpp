#pragma once

#include <cstdint>
#include <string>

#include "pauliprop/pauli_word.hpp"

namespace pauliprop {

enum class GateType : std::uint8_t { RX, RY, RZ, CNOT };

/// A parameterized rotation exp(-i theta P / 2) about P in {X, Y, Z}, or a
/// CNOT. For rotations `qubit` is the target and `param` the parameter id;
/// for CNOT `qubit` is the control and `target` the target.
struct Gate {
  GateType type = GateType::RX;
  std::uint32_t qubit = 0;
  std::uint32_t target = 0;
  std::uint32_t param = 0;

  static Gate rx(std::uint32_t q, std::uint32_t p) { return {GateType::RX, q, 0, p}; }
  static Gate ry(std::uint32_t q, std::uint32_t p) { return {GateType::RY, q, 0, p}; }
  static Gate rz(std::uint32_t q, std::uint32_t p) { return {GateType::RZ, q, 0, p}; }
  static Gate cnot(std::uint32_t control, std::uint32_t tgt) {
    return {GateType::CNOT, control, tgt, 0};
  }

  bool is_rotation() const { return type != GateType::CNOT; }
  /// Rotation axis as a Pauli letter; undefined for CNOT.
  Pauli axis() const {
    switch (type) {
      case GateType::RX: return Pauli::X;
      case GateType::RY: return Pauli::Y;
      default: return Pauli::Z;
    }
  }

  std::string to_string() const;

  friend bool operator==(const Gate& a, const Gate& b) {
    if (a.type != b.type || a.qubit != b.qubit) return false;
    return a.is_rotation() ? a.param == b.param : a.target == b.target;
  }
};

}  // namespace pauliprop
