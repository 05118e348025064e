#include "pauliprop/observable.hpp"

#include <algorithm>
#include <string>

#include "pauliprop/errors.hpp"

namespace pauliprop {

void PropagatedObservable::merge_into(const SymbolicTerm& term) {
  merge_into(TermKey{term.word, term.monomial}, term.coeff);
}

void PropagatedObservable::merge_into(TermKey key, std::int64_t coeff) {
  if (key.word.n_qubits() != n_qubits_) {
    throw ValidationError("term has " + std::to_string(key.word.n_qubits()) +
                          " qubits, observable has " + std::to_string(n_qubits_));
  }
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(std::move(key), coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second == 0) {
    terms_.erase(it);
  } else if (it->second >= kCoeffLimit || it->second <= -kCoeffLimit) {
    throw ResourceError("merged coefficient magnitude reached 2^31");
  }
}

void PropagatedObservable::merge(const PropagatedObservable& other) {
  if (other.n_qubits_ != n_qubits_) {
    throw ValidationError("cannot merge observables with different qubit counts");
  }
  for (const auto& [key, coeff] : other.terms_) merge_into(key, coeff);
  meta_.discarded_by_weight += other.meta_.discarded_by_weight;
  meta_.discarded_by_frequency += other.meta_.discarded_by_frequency;
  n_params_ = std::max(n_params_, other.n_params_);
}

std::int64_t PropagatedObservable::coefficient(const PauliWord& word,
                                               const TrigMonomial& monomial) const {
  auto it = terms_.find(TermKey{word, monomial});
  return it == terms_.end() ? 0 : it->second;
}

std::vector<SymbolicTerm> PropagatedObservable::sorted_terms() const {
  std::vector<SymbolicTerm> out;
  out.reserve(terms_.size());
  for (const auto& [key, coeff] : terms_) out.push_back({key.word, key.monomial, coeff});
  std::sort(out.begin(), out.end(), [](const SymbolicTerm& a, const SymbolicTerm& b) {
    if (a.word != b.word) return a.word < b.word;
    return a.monomial < b.monomial;
  });
  return out;
}

}  // namespace pauliprop
