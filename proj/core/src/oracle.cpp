#include "pauliprop/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "pauliprop/errors.hpp"

namespace pauliprop {
namespace {

constexpr std::size_t kDenseLimit = 12;
constexpr std::size_t kAutoDenseLimit = 10;

// i^k
Amplitude ipow(std::size_t k) {
  switch (k & 3u) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_size(std::size_t n, std::size_t limit, const char* what) {
  if (n == 0 || n > limit) {
    throw ValidationError(std::string(what) + " supports 1.." + std::to_string(limit) +
                          " qubits, got " + std::to_string(n));
  }
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  check_size(n_qubits, kMaxQubits, "statevector");
  amps_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

void StateVector::apply(const Gate& gate, std::span<const double> theta) {
  const std::size_t dim = amps_.size();
  if (gate.qubit >= n_qubits_ || (gate.type == GateType::CNOT && gate.target >= n_qubits_)) {
    throw ValidationError(gate.to_string() + " outside statevector");
  }
  if (gate.type == GateType::CNOT) {
    const std::size_t cbit = std::size_t{1} << gate.qubit;
    const std::size_t tbit = std::size_t{1} << gate.target;
    for (std::size_t b = 0; b < dim; ++b) {
      if ((b & cbit) && !(b & tbit)) std::swap(amps_[b], amps_[b | tbit]);
    }
    return;
  }
  if (gate.param >= theta.size()) throw ValidationError("theta too short for " + gate.to_string());
  const double c = std::cos(theta[gate.param] / 2);
  const double s = std::sin(theta[gate.param] / 2);
  const std::size_t bit = std::size_t{1} << gate.qubit;
  const Amplitude mis(0.0, -s);  // -i sin
  for (std::size_t b = 0; b < dim; ++b) {
    if (b & bit) continue;
    const Amplitude a0 = amps_[b];
    const Amplitude a1 = amps_[b | bit];
    switch (gate.type) {
      case GateType::RX:
        amps_[b] = c * a0 + mis * a1;
        amps_[b | bit] = mis * a0 + c * a1;
        break;
      case GateType::RY:
        amps_[b] = c * a0 - s * a1;
        amps_[b | bit] = s * a0 + c * a1;
        break;
      case GateType::RZ:
        amps_[b] = Amplitude(c, -s) * a0;
        amps_[b | bit] = Amplitude(c, s) * a1;
        break;
      case GateType::CNOT:
        break;
    }
  }
}

void StateVector::apply(const Circuit& circuit, std::span<const double> theta) {
  if (circuit.n_qubits != n_qubits_) throw ValidationError("circuit/statevector qubit mismatch");
  for (const Gate& g : circuit.gates) apply(g, theta);
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

double StateVector::expectation(const PauliWord& word) const {
  if (word.n_qubits() != n_qubits_) throw ValidationError("observable/statevector qubit mismatch");
  // P|b> = i^{#Y} (-1)^{popcount(b & z)} |b ^ x>
  const std::uint64_t x = word.x_mask();
  const std::uint64_t z = word.z_mask();
  const Amplitude phase = ipow(word.y_count());
  Amplitude acc{0.0, 0.0};
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    const double sign = (__builtin_popcountll(b & z) & 1) ? -1.0 : 1.0;
    acc += std::conj(amps_[b ^ x]) * (sign * amps_[b]);
  }
  return (phase * acc).real();
}

double StateVector::expectation(const PauliSum& op) const {
  double e = 0.0;
  for (const auto& t : op) e += t.weight * expectation(t.word);
  return e;
}

void apply_pauli(const PauliWord& word, Amplitude weight, std::span<const Amplitude> in,
                 std::span<Amplitude> out) {
  const std::uint64_t x = word.x_mask();
  const std::uint64_t z = word.z_mask();
  const Amplitude w = weight * ipow(word.y_count());
  for (std::size_t b = 0; b < in.size(); ++b) {
    const double sign = (__builtin_popcountll(b & z) & 1) ? -1.0 : 1.0;
    out[b ^ x] += (sign * w) * in[b];
  }
}

void apply_pauli_sum(const PauliSum& op, std::span<const Amplitude> in, std::span<Amplitude> out) {
  std::fill(out.begin(), out.end(), Amplitude{0.0, 0.0});
  for (const auto& t : op) apply_pauli(t.word, t.weight, in, out);
}

double simulate_expectation(const Circuit& circuit, std::span<const double> theta,
                            const PauliSum& observable) {
  StateVector psi(circuit.n_qubits);
  psi.apply(circuit, theta);
  return psi.expectation(observable);
}

double simulate_expectation(const Circuit& circuit, std::span<const double> theta,
                            const IntegerObservable& observable) {
  return simulate_expectation(circuit, theta, to_pauli_sum(observable));
}

std::vector<Amplitude> dense_matrix(const PauliSum& op, std::size_t n_qubits) {
  check_size(n_qubits, kDenseLimit, "dense matrix");
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::vector<Amplitude> m(dim * dim, Amplitude{0.0, 0.0});
  for (const auto& t : op) {
    if (t.word.n_qubits() != n_qubits) throw ValidationError("Pauli sum qubit mismatch");
    const std::uint64_t x = t.word.x_mask();
    const std::uint64_t z = t.word.z_mask();
    const Amplitude w = t.weight * ipow(t.word.y_count());
    for (std::size_t b = 0; b < dim; ++b) {
      const double sign = (__builtin_popcountll(b & z) & 1) ? -1.0 : 1.0;
      m[(b ^ x) * dim + b] += sign * w;
    }
  }
  return m;
}

namespace {

double dense_ground_energy(const PauliSum& op, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  const std::vector<Amplitude> m = dense_matrix(op, n);
  Eigen::Map<const Eigen::Matrix<Amplitude, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> mat(
      m.data(), dim, dim);
  const double herm_err = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > 1e-12) {
    throw ValidationError("operator is not Hermitian (deviation " + std::to_string(herm_err) + ")");
  }
  if (mat.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat.real(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mat, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Amplitude dot(std::span<const Amplitude> a, std::span<const Amplitude> b) {
  Amplitude s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double vnorm(std::span<const Amplitude> a) { return std::sqrt(dot(a, a).real()); }

double lanczos_ground_energy(const PauliSum& op, std::size_t n, const LanczosOptions& opts) {
  const std::size_t dim = std::size_t{1} << n;
  // Cap the Krylov basis at roughly 1 GiB of storage.
  const std::size_t mem_cap = std::max<std::size_t>(8, (std::size_t{1} << 30) / (dim * sizeof(Amplitude)));
  const std::size_t m = std::min({opts.subspace, dim, mem_cap});

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  std::vector<Amplitude> start(dim);
  for (auto& a : start) a = Amplitude(normal(rng), normal(rng));
  {
    const double nrm = vnorm(start);
    for (auto& a : start) a /= nrm;
  }

  std::vector<std::vector<Amplitude>> basis;
  std::vector<Amplitude> w(dim), ritz(dim), hx(dim);
  double best_residual = 0.0;
  for (std::size_t restart = 0; restart < opts.max_restarts; ++restart) {
    basis.clear();
    basis.push_back(start);
    std::vector<double> alpha, beta;
    for (std::size_t j = 0; j < m; ++j) {
      apply_pauli_sum(op, basis[j], w);
      const double a = dot(basis[j], w).real();
      alpha.push_back(a);
      // Full reorthogonalization, two passes.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& v : basis) {
          const Amplitude c = dot(v, w);
          for (std::size_t i = 0; i < dim; ++i) w[i] -= c * v[i];
        }
      }
      const double b = vnorm(w);
      if (j + 1 == m || b < 1e-12) break;
      beta.push_back(b);
      basis.emplace_back(dim);
      for (std::size_t i = 0; i < dim; ++i) basis.back()[i] = w[i] / b;
    }

    const std::size_t k = alpha.size();
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
    const Eigen::VectorXd y = solver.eigenvectors().col(0);

    std::fill(ritz.begin(), ritz.end(), Amplitude{0.0, 0.0});
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < dim; ++i) ritz[i] += y(static_cast<Eigen::Index>(j)) * basis[j][i];
    }
    const double nrm = vnorm(ritz);
    for (auto& a : ritz) a /= nrm;
    apply_pauli_sum(op, ritz, hx);
    const double rq = dot(ritz, hx).real();
    for (std::size_t i = 0; i < dim; ++i) hx[i] -= rq * ritz[i];
    best_residual = vnorm(hx);
    if (best_residual <= opts.residual_tol) return rq;
    start = ritz;
  }
  throw ConvergenceError("Lanczos did not reach residual " + std::to_string(opts.residual_tol) +
                         " (last " + std::to_string(best_residual) + ")");
}

}  // namespace

double ground_energy(const PauliSum& op, std::size_t n_qubits, EigenMethod method,
                     const LanczosOptions& opts) {
  for (const auto& t : op) {
    if (t.word.n_qubits() != n_qubits) throw ValidationError("Pauli sum qubit mismatch");
  }
  if (method == EigenMethod::Auto) {
    method = n_qubits <= kAutoDenseLimit ? EigenMethod::Dense : EigenMethod::Lanczos;
  }
  if (method == EigenMethod::Dense) {
    check_size(n_qubits, kDenseLimit, "dense eigensolver");
    return dense_ground_energy(op, n_qubits);
  }
  check_size(n_qubits, StateVector::kMaxQubits, "Lanczos eigensolver");
  return lanczos_ground_energy(op, n_qubits, opts);
}

double ground_energy(const AnnniSpec& spec, EigenMethod method, const LanczosOptions& opts) {
  return ground_energy(annni_hamiltonian(spec), spec.n_spins, method, opts);
}

}  // namespace pauliprop
