#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "pauliprop/pauli_word.hpp"
#include "pauliprop/trig_monomial.hpp"

namespace pauliprop {

/// Truncation threshold; std::nullopt means unlimited.
using Cutoff = std::optional<std::uint32_t>;

/// Product of a Pauli word and a trigonometric monomial with an exact
/// integer coefficient.
struct SymbolicTerm {
  PauliWord word;
  TrigMonomial monomial;
  std::int64_t coeff = 0;

  friend bool operator==(const SymbolicTerm&, const SymbolicTerm&) = default;
};

/// Integer-weighted Pauli word: the input form of a propagated observable.
struct PauliTerm {
  std::int64_t coeff = 1;
  PauliWord word;
};
using IntegerObservable = std::vector<PauliTerm>;

struct TermKey {
  PauliWord word;
  TrigMonomial monomial;

  friend bool operator==(const TermKey&, const TermKey&) = default;
  friend auto operator<=>(const TermKey&, const TermKey&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const TermKey& k) {
    return H::combine(std::move(h), k.word, k.monomial);
  }
};

struct TruncationMeta {
  Cutoff w_cut;
  Cutoff nu_cut;
  std::uint64_t discarded_by_weight = 0;
  std::uint64_t discarded_by_frequency = 0;
  std::uint64_t gate_count_processed = 0;

  friend bool operator==(const TruncationMeta&, const TruncationMeta&) = default;
};

/**
 * Merged sum of symbolic terms, keyed by (word, monomial).
 *
 * Coefficients are exact integers, so the map contents are independent of
 * insertion order; zero coefficients are erased on merge. Single writer.
 * Partial maps built concurrently combine through `merge`.
 */
class PropagatedObservable {
 public:
  using Map = absl::flat_hash_map<TermKey, std::int64_t>;

  /// Merged coefficients must stay below this magnitude.
  static constexpr std::int64_t kCoeffLimit = std::int64_t{1} << 31;

  PropagatedObservable() = default;
  explicit PropagatedObservable(std::size_t n_qubits, std::size_t n_params = 0)
      : n_qubits_(n_qubits), n_params_(n_params) {}

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t n_params() const { return n_params_; }
  void set_n_params(std::size_t n) { n_params_ = n; }

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  const Map& terms() const { return terms_; }
  Map& mutable_terms() { return terms_; }

  TruncationMeta& meta() { return meta_; }
  const TruncationMeta& meta() const { return meta_; }

  /// Adds `term` to the coefficient at its key; removes the key if the sum
  /// cancels. Throws ValidationError on a qubit-count mismatch.
  void merge_into(const SymbolicTerm& term);
  void merge_into(TermKey key, std::int64_t coeff);

  /// Combines a partial map; discard counters add up.
  void merge(const PropagatedObservable& other);

  /// Coefficient at (word, monomial), 0 when absent.
  std::int64_t coefficient(const PauliWord& word, const TrigMonomial& monomial) const;

  /// Terms in canonical (word, monomial) order.
  std::vector<SymbolicTerm> sorted_terms() const;

  /// Same qubit count and identical term map; metadata is not compared.
  friend bool operator==(const PropagatedObservable& a, const PropagatedObservable& b) {
    return a.n_qubits_ == b.n_qubits_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t n_qubits_ = 0;
  std::size_t n_params_ = 0;
  Map terms_;
  TruncationMeta meta_;
};

}  // namespace pauliprop
