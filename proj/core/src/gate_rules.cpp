#include "pauliprop/gate_rules.hpp"

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "pauliprop/errors.hpp"

namespace pauliprop {
namespace {

// Cyclic successor in X -> Y -> Z -> X.
Pauli next_letter(Pauli p) {
  switch (p) {
    case Pauli::X: return Pauli::Y;
    case Pauli::Y: return Pauli::Z;
    case Pauli::Z: return Pauli::X;
    default: return Pauli::I;
  }
}

void check_indices(const Gate& gate, const PauliWord& word) {
  const std::size_t n = word.n_qubits();
  if (gate.qubit >= n || (gate.type == GateType::CNOT && gate.target >= n)) {
    throw ValidationError(gate.to_string() + " acts outside a " + std::to_string(n) +
                          "-qubit word");
  }
  if (gate.type == GateType::CNOT && gate.qubit == gate.target) {
    throw ValidationError("CNOT control equals target");
  }
}

}  // namespace

bool gate_acts_on(const Gate& gate, const PauliWord& word) {
  if (gate.type == GateType::CNOT) {
    return ((word.x_mask() >> gate.qubit) & 1u) != 0 || ((word.z_mask() >> gate.target) & 1u) != 0;
  }
  const Pauli letter = word.letter(gate.qubit);
  return letter != Pauli::I && letter != gate.axis();
}

BranchResult conjugate(const Gate& gate, const PauliWord& word) {
  check_indices(gate, word);

  if (gate.type == GateType::CNOT) {
    const std::uint32_t c = gate.qubit;
    const std::uint32_t t = gate.target;
    const std::uint64_t xc = (word.x_mask() >> c) & 1u;
    const std::uint64_t zc = (word.z_mask() >> c) & 1u;
    const std::uint64_t xt = (word.x_mask() >> t) & 1u;
    const std::uint64_t zt = (word.z_mask() >> t) & 1u;
    const bool flip = (xc & zt & (xt ^ zc ^ 1u)) != 0;
    const std::uint64_t x = word.x_mask() ^ (xc << t);
    const std::uint64_t z = word.z_mask() ^ (zt << c);
    return BranchResult(Branch{PauliWord(word.n_qubits(), x, z), std::nullopt, flip ? -1 : 1});
  }

  const Pauli axis = gate.axis();
  const Pauli letter = word.letter(gate.qubit);
  if (letter == Pauli::I || letter == axis) return BranchResult(Branch{word, std::nullopt, 1});

  PauliWord rotated = word;
  rotated.toggle(gate.qubit, axis);
  const int sin_sign = letter == next_letter(axis) ? -1 : 1;
  return BranchResult(Branch{word, Trig::Cos, 1}, Branch{rotated, Trig::Sin, sin_sign});
}

namespace {

using Mat4 = Eigen::Matrix4cd;
using Mat2 = Eigen::Matrix2cd;

Mat2 letter_matrix(Pauli p) {
  const std::complex<double> i(0.0, 1.0);
  Mat2 m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

// Basis index bit q is qubit q, so qubit 1 is the left Kronecker factor.
Mat4 two_qubit(const Mat2& on_q0, const Mat2& on_q1) {
  Mat4 m;
  for (int r1 = 0; r1 < 2; ++r1)
    for (int c1 = 0; c1 < 2; ++c1)
      for (int r0 = 0; r0 < 2; ++r0)
        for (int c0 = 0; c0 < 2; ++c0) m(2 * r1 + r0, 2 * c1 + c0) = on_q1(r1, c1) * on_q0(r0, c0);
  return m;
}

Mat4 word_matrix(const PauliWord& w) { return two_qubit(letter_matrix(w.letter(0)), letter_matrix(w.letter(1))); }

Mat4 gate_matrix(const Gate& g, double theta) {
  if (g.type == GateType::CNOT) {
    Mat4 m = Mat4::Zero();
    for (int b = 0; b < 4; ++b) {
      int out = b;
      if ((b >> g.qubit) & 1) out ^= 1 << g.target;
      m(out, b) = 1.0;
    }
    return m;
  }
  const std::complex<double> i(0.0, 1.0);
  const Mat2 rot = std::cos(theta / 2) * Mat2::Identity() - i * std::sin(theta / 2) * letter_matrix(g.axis());
  return g.qubit == 0 ? two_qubit(rot, Mat2::Identity()) : two_qubit(Mat2::Identity(), rot);
}

}  // namespace

RuleValidationReport validate_rules_against_matrices(std::uint64_t seed) {
  constexpr int kAngles = 20;
  constexpr double kTol = 1e-12;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-2 * M_PI, 2 * M_PI);

  const std::vector<Gate> gates = {Gate::rx(0, 0), Gate::rx(1, 0), Gate::ry(0, 0), Gate::ry(1, 0),
                                   Gate::rz(0, 0), Gate::rz(1, 0), Gate::cnot(0, 1), Gate::cnot(1, 0)};
  RuleValidationReport report;
  for (const Gate& g : gates) {
    for (std::uint64_t code = 0; code < 16; ++code) {
      PauliWord w(2);
      w.set(0, static_cast<Pauli>(code & 3u));
      w.set(1, static_cast<Pauli>(code >> 2));
      const BranchResult result = conjugate(g, w);
      ++report.cases;
      for (int k = 0; k < kAngles; ++k) {
        const double theta = angle(rng);
        const Mat4 u = gate_matrix(g, theta);
        const Mat4 exact = u.adjoint() * word_matrix(w) * u;
        Mat4 symbolic = Mat4::Zero();
        for (const Branch& b : result.branches()) {
          double f = 1.0;
          if (b.factor) f = *b.factor == Trig::Sin ? std::sin(theta) : std::cos(theta);
          symbolic += static_cast<double>(b.sign) * f * word_matrix(b.word);
        }
        ++report.checks;
        const double err = (exact - symbolic).cwiseAbs().maxCoeff();
        if (err > kTol) {
          report.failures.push_back(g.to_string() + " on " + w.to_string() + " at theta=" +
                                    std::to_string(theta) + ": max deviation " + std::to_string(err));
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace pauliprop
