#include "pauliprop/optimizer.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <random>
#include <string>
#include <thread>

#include "pauliprop/calculus.hpp"
#include "pauliprop/errors.hpp"
#include "pauliprop/oracle.hpp"

namespace pauliprop {

void AdamConfig::validate() const {
  if (!(learning_rate > 0)) throw ValidationError("learning_rate must be > 0");
  if (!(beta1 > 0 && beta1 < 1)) throw ValidationError("beta1 must be in (0, 1)");
  if (!(beta2 > 0 && beta2 < 1)) throw ValidationError("beta2 must be in (0, 1)");
  if (!(epsilon > 0)) throw ValidationError("epsilon must be > 0");
  if (init_scale < 0) throw ValidationError("init_scale must be >= 0");
  if (max_steps == 0) throw ValidationError("max_steps must be >= 1");
}

Adam::Adam(const AdamConfig& cfg, std::size_t n_params)
    : cfg_(cfg), m_(n_params, 0.0), v_(n_params, 0.0) {
  cfg_.validate();
}

void Adam::step(std::span<double> theta, std::span<const double> grad) {
  if (theta.size() != m_.size() || grad.size() != m_.size()) {
    throw ValidationError("Adam step size mismatch");
  }
  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (std::size_t i = 0; i < theta.size(); ++i) {
    m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * grad[i];
    v_[i] = cfg_.beta2 * v_[i] + (1.0 - cfg_.beta2) * grad[i] * grad[i];
    const double m_hat = m_[i] / bc1;
    const double v_hat = v_[i] / bc2;
    theta[i] -= cfg_.learning_rate * m_hat / (std::sqrt(v_hat) + cfg_.epsilon);
  }
}

std::vector<double> initial_parameters(std::size_t n_params, const AdamConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> theta(n_params);
  for (auto& t : theta) t = cfg.init_scale * normal(rng);
  return theta;
}

AnnniSurrogate build_annni_surrogate(std::size_t n_spins, std::size_t depth, Boundary boundary,
                                     const TruncationConfig& cuts) {
  AnnniSurrogate s;
  s.spec.n_spins = n_spins;
  s.spec.boundary = boundary;
  s.circuit = local_entangler(n_spins, depth);
  const AnnniObservables obs = annni_observables(s.spec);

  const PropagatedObservable po1 = propagate(obs.o1, s.circuit, cuts);
  s.propagated_terms[0] = po1.size();
  s.polys.p1 = trim(po1);
  const PropagatedObservable po2 = propagate(obs.o2, s.circuit, cuts);
  s.propagated_terms[1] = po2.size();
  s.polys.p2 = trim(po2);
  const PropagatedObservable po3 = propagate(obs.o3, s.circuit, cuts);
  s.propagated_terms[2] = po3.size();
  s.polys.p3 = trim(po3);
  return s;
}

TrainTrace vqe_train(const AnnniPolynomials& polys, double kappa, double h, const AdamConfig& cfg,
                     double J) {
  return vqe_train(polys, kappa, h, cfg, initial_parameters(polys.p1.n_params(), cfg), J);
}

TrainTrace vqe_train(const AnnniPolynomials& polys, double kappa, double h, const AdamConfig& cfg,
                     std::vector<double> theta0, double J) {
  cfg.validate();
  const std::size_t n = polys.p1.n_params();
  if (polys.p2.n_params() != n || polys.p3.n_params() != n) {
    throw ValidationError("surrogate polynomials disagree on parameter count");
  }
  if (theta0.size() != n) throw ValidationError("initial parameter vector has wrong length");

  const auto start = std::chrono::steady_clock::now();
  const PolynomialEvaluator f1(polys.p1), f2(polys.p2), f3(polys.p3);
  Adam adam(cfg, n);
  TrainTrace trace;
  trace.theta = std::move(theta0);
  std::vector<double> g1, g2, g3, grad(n);

  for (std::size_t step = 0; step < cfg.max_steps; ++step) {
    const double e1 = f1.value_and_gradient(trace.theta, g1);
    const double e2 = f2.value_and_gradient(trace.theta, g2);
    const double e3 = f3.value_and_gradient(trace.theta, g3);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      grad[i] = combine_energy(g1[i], g2[i], g3[i], kappa, h, J);
      norm2 += grad[i] * grad[i];
    }
    const double gnorm = std::sqrt(norm2);
    trace.steps.push_back({step, combine_energy(e1, e2, e3, kappa, h, J), gnorm});
    if (cfg.grad_norm_tol > 0 && gnorm < cfg.grad_norm_tol) break;
    adam.step(trace.theta, grad);
  }
  trace.final_energy = combine_energy(f1.value(trace.theta), f2.value(trace.theta),
                                      f3.value(trace.theta), kappa, h, J);
  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return trace;
}

std::vector<SweepPoint> phase_diagram_sweep(const AnnniSurrogate& surrogate, const SweepConfig& cfg) {
  if (cfg.kappas.empty() || cfg.hs.empty()) throw ValidationError("sweep grids must be non-empty");
  const std::size_t n = surrogate.spec.n_spins;
  const bool with_oracle = n <= std::min(cfg.oracle_limit, StateVector::kMaxQubits);

  std::vector<SweepPoint> points;
  for (double k : cfg.kappas) {
    for (double h : cfg.hs) {
      SweepPoint p;
      p.kappa = k;
      p.h = h;
      p.seed = cfg.adam.seed + points.size();
      points.push_back(p);
    }
  }

  auto run_point = [&](SweepPoint& p) {
    AdamConfig adam = cfg.adam;
    adam.seed = p.seed;
    const TrainTrace trace = vqe_train(surrogate.polys, p.kappa, p.h, adam, surrogate.spec.J);
    p.e_surrogate = trace.final_energy;
    p.theta = trace.theta;
    if (!with_oracle) return;
    AnnniSpec spec = surrogate.spec;
    spec.kappa = p.kappa;
    spec.h = p.h;
    p.e_exact = ground_energy(spec);
    p.e_true = simulate_expectation(surrogate.circuit, trace.theta, annni_hamiltonian(spec));
    p.rel_error = std::abs(*p.e_true - *p.e_exact) / std::abs(*p.e_exact);
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(points.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < points.size(); i = next++) run_point(points[i]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return points;
}

}  // namespace pauliprop
