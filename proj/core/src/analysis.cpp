#include "pauliprop/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <utility>

#include <Eigen/Dense>

#include "pauliprop/calculus.hpp"
#include "pauliprop/errors.hpp"
#include "pauliprop/oracle.hpp"
#include "pauliprop/propagator.hpp"

namespace pauliprop {

bool BoundParams::valid() const {
  return C0 > 0 && alpha > 0 && alpha < 1 && beta > 0 && beta < 1 && A() < 1 && B() < 1;
}

double truncation_bound(const BoundParams& bp, Cutoff w_cut, Cutoff nu_cut) {
  const double a = bp.A();
  const double b = bp.B();
  if (!(bp.C0 > 0)) throw ValidationError("bound requires C0 > 0");
  if (!(bp.alpha > 0 && bp.alpha < 1) || !(bp.beta > 0 && bp.beta < 1)) {
    throw ValidationError("bound requires alpha, beta in (0, 1)");
  }
  if (!(a < 1)) {
    throw ValidationError("bound requires A = 3*n*alpha < 1, got A = " + std::to_string(a));
  }
  if (!(b < 1)) {
    throw ValidationError("bound requires B = 2*P*beta < 1, got B = " + std::to_string(b));
  }
  const double weight_tail = w_cut ? std::pow(a, *w_cut + 1.0) : 0.0;
  const double freq_tail = nu_cut ? std::pow(b, *nu_cut + 1.0) : 0.0;
  return bp.C0 * (weight_tail + freq_tail) / ((1 - a) * (1 - b));
}

std::vector<std::string> monotonicity_violations(const CutoffTable& table, double rel_slack,
                                                 double abs_tol) {
  std::vector<std::string> out;
  const std::size_t rows = table.w_cuts.size();
  const std::size_t cols = table.nu_cuts.size();
  auto label = [&](std::size_t i, std::size_t j) {
    auto fmt = [](const Cutoff& c) { return c ? std::to_string(*c) : std::string("full"); };
    return "(w=" + fmt(table.w_cuts[i]) + ", nu=" + fmt(table.nu_cuts[j]) + ")";
  };
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = table.at(i, j);
      if (i + 1 < rows && table.at(i + 1, j) > v * (1 + rel_slack) + abs_tol) {
        out.push_back(label(i + 1, j) + "=" + std::to_string(table.at(i + 1, j)) + " > " +
                      label(i, j) + "=" + std::to_string(v));
      }
      if (j + 1 < cols && table.at(i, j + 1) > v * (1 + rel_slack) + abs_tol) {
        out.push_back(label(i, j + 1) + "=" + std::to_string(table.at(i, j + 1)) + " > " +
                      label(i, j) + "=" + std::to_string(v));
      }
    }
  }
  return out;
}

std::vector<std::vector<double>> sample_uniform_angles(std::size_t n_samples, std::size_t n_params,
                                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::vector<std::vector<double>> out(n_samples, std::vector<double>(n_params));
  for (auto& row : out) {
    for (auto& t : row) t = angle(rng);
  }
  return out;
}

MaeSweep mae_sweep(const Circuit& circuit, const IntegerObservable& observable,
                   std::span<const Cutoff> w_cuts, std::span<const Cutoff> nu_cuts,
                   std::size_t n_samples, std::uint64_t seed,
                   const std::optional<BoundParams>& fitted) {
  if (circuit.n_qubits > StateVector::kMaxQubits) {
    throw ValidationError("MAE sweep needs the statevector oracle (n <= 20)");
  }
  if (n_samples == 0) throw ValidationError("MAE sweep needs at least one sample");
  const auto thetas = sample_uniform_angles(n_samples, circuit.n_params, seed);
  const PauliSum obs = to_pauli_sum(observable);
  std::vector<double> exact(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) exact[s] = simulate_expectation(circuit, thetas[s], obs);

  MaeSweep out;
  out.n_samples = n_samples;
  out.mae.w_cuts.assign(w_cuts.begin(), w_cuts.end());
  out.mae.nu_cuts.assign(nu_cuts.begin(), nu_cuts.end());
  const bool with_bound = fitted && fitted->valid();
  for (const Cutoff& w : w_cuts) {
    for (const Cutoff& nu : nu_cuts) {
      TruncationConfig cfg;
      cfg.w_cut = w;
      cfg.nu_cut = nu;
      const PropagatedObservable po = propagate(observable, circuit, cfg);
      const PolynomialEvaluator eval(trim(po));
      double sum = 0.0, sum_sq = 0.0;
      for (std::size_t s = 0; s < n_samples; ++s) {
        const double err = std::abs(exact[s] - eval.value(thetas[s]));
        sum += err;
        sum_sq += err * err;
      }
      MaeCell cell;
      cell.w_cut = w;
      cell.nu_cut = nu;
      cell.propagated_terms = po.size();
      const double n = static_cast<double>(n_samples);
      cell.mae = sum / n;
      const double var = n > 1 ? std::max(0.0, (sum_sq - n * cell.mae * cell.mae) / (n - 1)) : 0.0;
      cell.std_error = std::sqrt(var / n);
      if (with_bound) cell.bound = truncation_bound(*fitted, w, nu);
      out.mae.values.push_back(cell.mae);
      out.cells.push_back(cell);
    }
  }
  return out;
}

namespace {

double monomial_abs(const TrigMonomial& m, std::span<const double> theta) {
  double v = 1.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const TrigFactor f = m.factor(i);
    const double x = f.kind == Trig::Sin ? std::sin(theta[f.param]) : std::cos(theta[f.param]);
    v *= std::pow(std::abs(x), static_cast<double>(f.exponent));
  }
  return v;
}

}  // namespace

DecayFit fit_decay_constants(const PropagatedObservable& po, std::size_t n_samples,
                             std::uint64_t seed) {
  if (n_samples == 0) throw ValidationError("decay fit needs at least one sample");
  std::size_t n_params = po.n_params();
  for (const auto& [key, coeff] : po.terms()) {
    n_params = std::max<std::size_t>(n_params, static_cast<std::size_t>(key.monomial.max_param() + 1));
  }
  const auto thetas = sample_uniform_angles(n_samples, n_params, seed);

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<double, std::size_t>> sums;
  for (const auto& [key, coeff] : po.terms()) {
    double acc = 0.0;
    for (const auto& theta : thetas) acc += monomial_abs(key.monomial, theta);
    auto& slot = sums[{static_cast<std::uint32_t>(key.word.weight()), key.monomial.frequency()}];
    slot.first += std::abs(static_cast<double>(coeff)) * acc / static_cast<double>(n_samples);
    ++slot.second;
  }
  if (sums.size() < 2) {
    throw ValidationError("decay fit needs at least two distinct (weight, frequency) classes");
  }

  DecayFit fit;
  const auto rows = static_cast<Eigen::Index>(sums.size());
  Eigen::MatrixXd design(rows, 3);
  Eigen::VectorXd rhs(rows);
  Eigen::Index r = 0;
  std::map<std::uint32_t, int> weights, freqs;
  for (const auto& [wf, acc] : sums) {
    DecayGroup g;
    g.weight = wf.first;
    g.frequency = wf.second;
    g.terms = acc.second;
    g.mean_abs = acc.first / static_cast<double>(acc.second);
    fit.groups.push_back(g);
    design(r, 0) = 1.0;
    design(r, 1) = g.weight;
    design(r, 2) = g.frequency;
    rhs(r) = std::log(g.mean_abs);
    ++weights[g.weight];
    ++freqs[g.frequency];
    ++r;
  }
  fit.alpha_identified = weights.size() > 1;
  fit.beta_identified = freqs.size() > 1;

  const Eigen::VectorXd sol = design.completeOrthogonalDecomposition().solve(rhs);
  fit.params.C0 = std::exp(sol(0));
  fit.params.alpha = std::exp(sol(1));
  fit.params.beta = std::exp(sol(2));
  fit.params.n_qubits = po.n_qubits();
  fit.params.n_params = n_params;

  double ss = 0.0;
  for (std::size_t i = 0; i < fit.groups.size(); ++i) {
    auto& g = fit.groups[i];
    const double log_fit = sol(0) + g.weight * sol(1) + g.frequency * sol(2);
    g.fitted = std::exp(log_fit);
    const double d = std::log(g.mean_abs) - log_fit;
    ss += d * d;
  }
  fit.rms_log_residual = std::sqrt(ss / static_cast<double>(fit.groups.size()));
  return fit;
}

std::vector<VarianceRow> frequency_variance_check(std::uint32_t nu_max, std::size_t n_samples,
                                                  std::uint64_t seed) {
  if (n_samples == 0) throw ValidationError("variance check needs at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::bernoulli_distribution pick_sin(0.5);

  std::vector<VarianceRow> rows;
  for (std::uint32_t nu = 1; nu <= nu_max; ++nu) {
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) {
      double prod = 1.0;
      for (std::uint32_t i = 0; i < nu; ++i) {
        const double t = angle(rng);
        const double f = pick_sin(rng) ? std::sin(t) : std::cos(t);
        prod *= f * f;
      }
      sum += prod;
      sum_sq += prod * prod;
    }
    const double n = static_cast<double>(n_samples);
    VarianceRow row;
    row.nu = nu;
    row.estimate = sum / n;
    row.expected = std::ldexp(1.0, -static_cast<int>(nu));
    const double var = n > 1 ? std::max(0.0, (sum_sq - n * row.estimate * row.estimate) / (n - 1)) : 0.0;
    row.std_error = std::sqrt(var / n);
    rows.push_back(row);
  }
  return rows;
}

CutoffTable gradient_tail_check(const Circuit& circuit, const IntegerObservable& observable,
                                const std::vector<std::vector<double>>& thetas,
                                std::span<const Cutoff> w_cuts, std::span<const Cutoff> nu_cuts) {
  if (circuit.n_qubits > StateVector::kMaxQubits) {
    throw ValidationError("gradient tail check is limited to oracle-size circuits (n <= 20)");
  }
  const PolynomialEvaluator exact(trim(propagate(observable, circuit, TruncationConfig{})));
  std::vector<std::vector<double>> exact_grads(thetas.size());
  for (std::size_t s = 0; s < thetas.size(); ++s) exact.value_and_gradient(thetas[s], exact_grads[s]);

  CutoffTable table;
  table.w_cuts.assign(w_cuts.begin(), w_cuts.end());
  table.nu_cuts.assign(nu_cuts.begin(), nu_cuts.end());
  std::vector<double> g;
  for (const Cutoff& w : w_cuts) {
    for (const Cutoff& nu : nu_cuts) {
      TruncationConfig cfg;
      cfg.w_cut = w;
      cfg.nu_cut = nu;
      const PolynomialEvaluator trunc(trim(propagate(observable, circuit, cfg)));
      double worst = 0.0;
      for (std::size_t s = 0; s < thetas.size(); ++s) {
        trunc.value_and_gradient(thetas[s], g);
        for (std::size_t k = 0; k < g.size(); ++k) {
          worst = std::max(worst, std::abs(exact_grads[s][k] - g[k]));
        }
      }
      table.values.push_back(worst);
    }
  }
  return table;
}

}  // namespace pauliprop
