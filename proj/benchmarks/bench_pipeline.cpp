#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "pauliprop/analysis.hpp"
#include "pauliprop/calculus.hpp"
#include "pauliprop/models.hpp"
#include "pauliprop/propagator.hpp"

namespace {

using namespace pauliprop;

IntegerObservable sum_z(std::size_t n) {
  IntegerObservable obs;
  for (std::size_t q = 0; q < n; ++q) obs.push_back({1, PauliWord::single(n, q, Pauli::Z)});
  return obs;
}

Cutoff cut(std::int64_t v) { return v < 0 ? Cutoff{} : Cutoff{static_cast<std::uint32_t>(v)}; }

// Args: qubits, depth, w_cut, nu_cut (-1 = unlimited).
void BM_Propagate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Circuit c = local_entangler(n, static_cast<std::size_t>(state.range(1)));
  const TruncationConfig cfg{cut(state.range(2)), cut(state.range(3))};
  const auto obs = sum_z(n);
  std::size_t terms = 0;
  for (auto _ : state) {
    auto po = propagate(obs, c, cfg);
    terms = po.size();
    benchmark::DoNotOptimize(po);
  }
  state.counters["terms"] = static_cast<double>(terms);
}
BENCHMARK(BM_Propagate)
    ->Args({8, 2, -1, -1})
    ->Args({8, 3, 8, 12})
    ->Args({12, 2, 4, 10})
    ->Args({12, 3, 3, 8})
    ->Unit(benchmark::kMillisecond);

// Args: qubits, depth, nu_cut.
void BM_ApplyGate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Circuit c = local_entangler(n, static_cast<std::size_t>(state.range(1)));
  const TruncationConfig cfg{std::nullopt, cut(state.range(2))};
  // Everything except the first gate, which is the one timed.
  PropagatedObservable base(n, c.n_params);
  for (const auto& t : sum_z(n)) base.merge_into({t.word, TrigMonomial{}}, t.coeff);
  for (std::size_t g = c.gates.size() - 1; g > 0; --g) apply_gate(base, c.gates[g], cfg);
  const Gate first = c.gates.front();
  for (auto _ : state) {
    state.PauseTiming();
    PropagatedObservable po = base;
    state.ResumeTiming();
    apply_gate(po, first, cfg);
    benchmark::DoNotOptimize(po);
  }
  state.counters["terms_in"] = static_cast<double>(base.size());
}
BENCHMARK(BM_ApplyGate)->Args({8, 2, -1})->Args({10, 3, 10})->Unit(benchmark::kMicrosecond);

ExpectationPolynomial bench_poly(std::size_t n, std::size_t depth) {
  return trim(propagate(sum_z(n), local_entangler(n, depth), {Cutoff{6}, Cutoff{12}}));
}

void BM_Evaluate(benchmark::State& state) {
  const auto poly = bench_poly(static_cast<std::size_t>(state.range(0)), 2);
  const PolynomialEvaluator eval(poly);
  const auto theta = sample_uniform_angles(1, poly.n_params(), 1)[0];
  for (auto _ : state) benchmark::DoNotOptimize(eval.value(theta));
  state.counters["poly_terms"] = static_cast<double>(poly.size());
}
BENCHMARK(BM_Evaluate)->Arg(8)->Arg(12);

void BM_Gradient(benchmark::State& state) {
  const auto poly = bench_poly(static_cast<std::size_t>(state.range(0)), 2);
  const PolynomialEvaluator eval(poly);
  const auto theta = sample_uniform_angles(1, poly.n_params(), 1)[0];
  std::vector<double> grad;
  for (auto _ : state) benchmark::DoNotOptimize(eval.value_and_gradient(theta, grad));
  state.counters["poly_terms"] = static_cast<double>(poly.size());
}
BENCHMARK(BM_Gradient)->Arg(8)->Arg(12);

void BM_EvaluateBatch(benchmark::State& state) {
  const auto poly = bench_poly(8, 2);
  const auto thetas = sample_uniform_angles(1000, poly.n_params(), 2);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_batch(poly, thetas, threads));
}
BENCHMARK(BM_EvaluateBatch)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
