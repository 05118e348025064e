#include "pauliprop/propagator.hpp"

#include <algorithm>
#include <string>
#include <thread>
#include <utility>

#include "pauliprop/errors.hpp"
#include "pauliprop/gate_rules.hpp"

namespace pauliprop {

void TruncationConfig::validate() const {
  if (w_cut && *w_cut == 0) throw ValidationError("w_cut must be >= 1");
  if (max_terms == 0) throw ValidationError("max_terms must be >= 1");
}

ExpectationPolynomial::ExpectationPolynomial(std::size_t n_params, std::vector<PolyTerm> terms,
                                             TruncationMeta meta)
    : n_params_(n_params), meta_(meta) {
  std::sort(terms.begin(), terms.end(),
            [](const PolyTerm& a, const PolyTerm& b) { return a.monomial < b.monomial; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().monomial == t.monomial) {
      terms_.back().coeff += t.coeff;
      if (terms_.back().coeff == 0) terms_.pop_back();
    } else if (t.coeff != 0) {
      terms_.push_back(std::move(t));
    }
  }
}

std::size_t ExpectationPolynomial::required_params() const {
  std::int64_t m = -1;
  for (const auto& t : terms_) m = std::max(m, t.monomial.max_param());
  return static_cast<std::size_t>(m + 1);
}

namespace {

bool exceeds(const Cutoff& cut, std::uint64_t value) { return cut && value > *cut; }

// Returns false (and counts the discard) when the key violates a cutoff.
bool admit(const TermKey& key, const TruncationConfig& cfg, TruncationMeta& meta) {
  if (exceeds(cfg.w_cut, key.word.weight())) {
    ++meta.discarded_by_weight;
    return false;
  }
  if (exceeds(cfg.nu_cut, key.monomial.frequency())) {
    ++meta.discarded_by_frequency;
    return false;
  }
  return true;
}

}  // namespace

void apply_gate(PropagatedObservable& po, const Gate& gate, const TruncationConfig& cfg) {
  auto& terms = po.mutable_terms();
  auto& meta = po.meta();
  std::vector<std::pair<TermKey, std::int64_t>> emitted;

  // Weight is checked before frequency, so each dropped branch is counted once.
  auto keep = [&](std::size_t weight, std::uint32_t frequency) {
    if (exceeds(cfg.w_cut, weight)) {
      ++meta.discarded_by_weight;
      return false;
    }
    if (exceeds(cfg.nu_cut, frequency)) {
      ++meta.discarded_by_frequency;
      return false;
    }
    return true;
  };

  for (auto it = terms.begin(); it != terms.end();) {
    if (!gate_acts_on(gate, it->first.word)) {
      ++it;
      continue;
    }
    auto node = terms.extract(it++);
    TermKey& key = node.key();
    const std::int64_t coeff = node.mapped();
    const BranchResult result = conjugate(gate, key.word);

    if (result.size() == 1) {
      if (!keep(result[0].word.weight(), key.monomial.frequency())) continue;
      key.word = result[0].word;
      emitted.emplace_back(std::move(key), coeff * result[0].sign);
      continue;
    }
    // Rotation: the sin branch copies the monomial, the cos branch reuses it.
    const std::uint32_t frequency = key.monomial.frequency() + 1;
    if (keep(result[1].word.weight(), frequency)) {
      TermKey sin_key{result[1].word, key.monomial.multiplied(gate.param, Trig::Sin)};
      emitted.emplace_back(std::move(sin_key), coeff * result[1].sign);
    }
    if (keep(result[0].word.weight(), frequency)) {
      key.monomial.multiply(gate.param, Trig::Cos);
      emitted.emplace_back(std::move(key), coeff * result[0].sign);
    }
  }

  for (auto& [key, coeff] : emitted) po.merge_into(std::move(key), coeff);
  ++meta.gate_count_processed;

  if (po.size() > cfg.max_terms) {
    throw ResourceError("term count " + std::to_string(po.size()) + " exceeded max_terms=" +
                        std::to_string(cfg.max_terms) + " after " +
                        std::to_string(meta.gate_count_processed) + " gates");
  }
}

PropagatedObservable propagate(std::span<const PauliTerm> observable, const Circuit& circuit,
                               const TruncationConfig& cfg) {
  cfg.validate();
  circuit.validate();

  PropagatedObservable po(circuit.n_qubits, circuit.n_params);
  po.meta().w_cut = cfg.w_cut;
  po.meta().nu_cut = cfg.nu_cut;
  for (const auto& term : observable) {
    if (term.word.n_qubits() != circuit.n_qubits) {
      throw ValidationError("observable word " + term.word.to_string() + " has " +
                            std::to_string(term.word.n_qubits()) + " qubits, circuit has " +
                            std::to_string(circuit.n_qubits));
    }
    TermKey key{term.word, TrigMonomial{}};
    if (!admit(key, cfg, po.meta())) continue;
    po.merge_into(std::move(key), term.coeff);
  }

  for (auto g = circuit.gates.rbegin(); g != circuit.gates.rend(); ++g) apply_gate(po, *g, cfg);
  return po;
}

PropagatedObservable propagate_partitioned(std::span<const PauliTerm> observable,
                                           const Circuit& circuit, const TruncationConfig& cfg,
                                           std::size_t partitions) {
  partitions = std::clamp<std::size_t>(partitions, 1, std::max<std::size_t>(observable.size(), 1));
  std::vector<PropagatedObservable> parts(partitions);
  std::vector<std::exception_ptr> errors(partitions);
  {
    std::vector<std::jthread> workers;
    for (std::size_t p = 0; p < partitions; ++p) {
      workers.emplace_back([&, p] {
        try {
          IntegerObservable slice;
          for (std::size_t i = p; i < observable.size(); i += partitions) slice.push_back(observable[i]);
          parts[p] = propagate(slice, circuit, cfg);
        } catch (...) {
          errors[p] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  PropagatedObservable result = std::move(parts[0]);
  for (std::size_t p = 1; p < partitions; ++p) result.merge(parts[p]);
  return result;
}

ExpectationPolynomial trim(const PropagatedObservable& po) {
  std::vector<PolyTerm> kept;
  for (const auto& [key, coeff] : po.terms()) {
    if (key.word.is_diagonal()) kept.push_back({key.monomial, coeff});
  }
  return ExpectationPolynomial(po.n_params(), std::move(kept), po.meta());
}

TermStatistics term_statistics(const PropagatedObservable& po) {
  TermStatistics s;
  for (const auto& [key, coeff] : po.terms()) {
    const auto w = static_cast<std::uint32_t>(key.word.weight());
    const std::uint32_t f = key.monomial.frequency();
    ++s.weight[w];
    ++s.frequency[f];
    if (key.word.is_diagonal()) {
      ++s.surviving_weight[w];
      ++s.surviving_frequency[f];
    }
  }
  return s;
}

}  // namespace pauliprop
