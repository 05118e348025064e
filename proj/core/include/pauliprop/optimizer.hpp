#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pauliprop/circuit.hpp"
#include "pauliprop/models.hpp"
#include "pauliprop/propagator.hpp"

namespace pauliprop {

struct AdamConfig {
  double learning_rate = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t max_steps = 2000;
  std::uint64_t seed = 1234;
  double init_scale = 0.1;      // stddev of the N(0, s^2) initial angles
  double grad_norm_tol = 1e-6;  // stop early below this; 0 disables

  void validate() const;
};

/// Adam with bias correction.
class Adam {
 public:
  Adam(const AdamConfig& cfg, std::size_t n_params);

  void step(std::span<double> theta, std::span<const double> grad);
  std::size_t steps_taken() const { return t_; }

 private:
  AdamConfig cfg_;
  std::vector<double> m_;
  std::vector<double> v_;
  std::size_t t_ = 0;
};

/// Seeded N(0, init_scale^2) starting point.
std::vector<double> initial_parameters(std::size_t n_params, const AdamConfig& cfg);

/// Trimmed surrogate polynomials for O1, O2, O3 of the ANNNI chain.
struct AnnniPolynomials {
  ExpectationPolynomial p1;
  ExpectationPolynomial p2;
  ExpectationPolynomial p3;
};

struct AnnniSurrogate {
  AnnniSpec spec;  // kappa and h are ignored; they enter only at training time
  Circuit circuit;
  AnnniPolynomials polys;
  std::array<std::size_t, 3> propagated_terms{};
};

/// Propagates O1, O2, O3 once through the local entangler and trims them.
AnnniSurrogate build_annni_surrogate(std::size_t n_spins, std::size_t depth, Boundary boundary,
                                     const TruncationConfig& cuts);

struct TrainStep {
  std::size_t step = 0;
  double energy = 0.0;  // surrogate energy before the update
  double grad_norm = 0.0;

  friend bool operator==(const TrainStep&, const TrainStep&) = default;
};

struct TrainTrace {
  std::vector<TrainStep> steps;
  std::vector<double> theta;  // final parameters
  double final_energy = 0.0;  // surrogate energy at `theta`
  double wall_seconds = 0.0;
};

/// Minimizes combine_energy(p1, p2, p3; kappa, h) with Adam from the seeded
/// initial point. Deterministic for a fixed config.
TrainTrace vqe_train(const AnnniPolynomials& polys, double kappa, double h, const AdamConfig& cfg,
                     double J = 1.0);
TrainTrace vqe_train(const AnnniPolynomials& polys, double kappa, double h, const AdamConfig& cfg,
                     std::vector<double> theta0, double J = 1.0);

struct SweepConfig {
  std::vector<double> kappas;
  std::vector<double> hs;
  AdamConfig adam;
  std::size_t oracle_limit = 14;  // statevector and exact diagonalization up to this size
  unsigned threads = 1;
};

struct SweepPoint {
  double kappa = 0.0;
  double h = 0.0;
  double e_surrogate = 0.0;
  std::optional<double> e_true;   // statevector energy of the trained parameters
  std::optional<double> e_exact;  // exact ground energy
  std::optional<double> rel_error;
  std::uint64_t seed = 0;
  std::vector<double> theta;  // trained parameters
};

/// Trains a fresh model per (kappa, h) point, kappa-major; point i uses
/// seed adam.seed + i. Exact references are filled in when the chain fits
/// within oracle_limit. Throws ValidationError for empty grids.
std::vector<SweepPoint> phase_diagram_sweep(const AnnniSurrogate& surrogate, const SweepConfig& cfg);

}  // namespace pauliprop
