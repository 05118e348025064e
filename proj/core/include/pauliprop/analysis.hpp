#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pauliprop/circuit.hpp"
#include "pauliprop/observable.hpp"

namespace pauliprop {

/// Decay constants of the weight/frequency coefficient model
/// sup|c_j| <= C0 alpha^w beta^nu on n qubits with P parameters.
struct BoundParams {
  double C0 = 1.0;
  double alpha = 0.5;
  double beta = 0.5;
  std::size_t n_qubits = 1;
  std::size_t n_params = 1;

  double A() const { return 3.0 * static_cast<double>(n_qubits) * alpha; }
  double B() const { return 2.0 * static_cast<double>(n_params) * beta; }
  /// C0 > 0, alpha and beta in (0,1), and A < 1, B < 1.
  bool valid() const;
};

/**
 * Worst-case joint truncation error
 *   C0 (A^(w_cut+1) + B^(nu_cut+1)) / ((1-A)(1-B)).
 * An unlimited cutoff contributes no tail. Throws ValidationError when
 * A >= 1 or B >= 1 (the series diverge) or the constants are out of range.
 */
double truncation_bound(const BoundParams& bp, Cutoff w_cut, Cutoff nu_cut);

/// Row-major table indexed by (w_cuts[i], nu_cuts[j]).
struct CutoffTable {
  std::vector<Cutoff> w_cuts;
  std::vector<Cutoff> nu_cuts;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * nu_cuts.size() + j]; }
};

/// Entries where the table increases along either axis by more than
/// `rel_slack` (relative) plus `abs_tol`. Cutoff lists must be ascending.
std::vector<std::string> monotonicity_violations(const CutoffTable& table, double rel_slack,
                                                 double abs_tol = 1e-12);

struct MaeCell {
  Cutoff w_cut;
  Cutoff nu_cut;
  double mae = 0.0;
  double std_error = 0.0;
  std::optional<double> bound;  // set when fitted constants are valid
  std::size_t propagated_terms = 0;
};

struct MaeSweep {
  CutoffTable mae;  // mean absolute error per cell
  std::vector<MaeCell> cells;  // same order as mae.values
  std::size_t n_samples = 0;
};

/**
 * Mean |L_exact(theta) - L_trunc(theta)| over theta ~ U[0, 2pi)^P for each
 * (w_cut, nu_cut). One theta sample set is shared by every cell; the exact
 * reference comes from the statevector oracle. When `fitted` is given and
 * valid, each cell also carries the truncation bound.
 */
MaeSweep mae_sweep(const Circuit& circuit, const IntegerObservable& observable,
                   std::span<const Cutoff> w_cuts, std::span<const Cutoff> nu_cuts,
                   std::size_t n_samples, std::uint64_t seed,
                   const std::optional<BoundParams>& fitted = std::nullopt);

struct DecayGroup {
  std::uint32_t weight = 0;
  std::uint32_t frequency = 0;
  std::size_t terms = 0;
  double mean_abs = 0.0;  // mean over terms and samples of |c_j(theta)|
  double fitted = 0.0;    // C0 alpha^w beta^nu
};

struct DecayFit {
  BoundParams params;
  std::vector<DecayGroup> groups;
  double rms_log_residual = 0.0;
  bool alpha_identified = true;  // false when all groups share one weight
  bool beta_identified = true;   // false when all groups share one frequency
};

/**
 * Least-squares fit of log(mean|c_j|) = log C0 + w log alpha + nu log beta
 * over (weight, frequency) groups of the propagated terms, with theta
 * sampled uniformly. Rank-deficient designs get the minimum-norm solution
 * and are flagged. Throws ValidationError when only one group exists.
 */
DecayFit fit_decay_constants(const PropagatedObservable& po, std::size_t n_samples,
                             std::uint64_t seed);

struct VarianceRow {
  std::uint32_t nu = 0;
  double estimate = 0.0;
  double expected = 0.0;  // 2^-nu
  double std_error = 0.0;
};

/// Monte Carlo estimate of E[prod_{i<nu} f_i(theta_i)^2] for nu = 1..nu_max, with theta_i
/// uniform and each f_i a random choice of sin or cos.
std::vector<VarianceRow> frequency_variance_check(std::uint32_t nu_max, std::size_t n_samples,
                                                  std::uint64_t seed);

/// Max over samples and components of |grad L_exact - grad L_trunc|, with
/// the exact gradient taken from the untruncated polynomial.
CutoffTable gradient_tail_check(const Circuit& circuit, const IntegerObservable& observable,
                                const std::vector<std::vector<double>>& thetas,
                                std::span<const Cutoff> w_cuts, std::span<const Cutoff> nu_cuts);

/// Shared sampler: rows of P angles uniform in [0, 2pi).
std::vector<std::vector<double>> sample_uniform_angles(std::size_t n_samples, std::size_t n_params,
                                                       std::uint64_t seed);

}  // namespace pauliprop
