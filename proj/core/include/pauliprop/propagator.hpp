#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "pauliprop/circuit.hpp"
#include "pauliprop/observable.hpp"

namespace pauliprop {

struct TruncationConfig {
  Cutoff w_cut;   // drop words with weight > w_cut
  Cutoff nu_cut;  // drop monomials with frequency > nu_cut
  std::size_t max_terms = 50'000'000;

  /// Throws ValidationError for w_cut == 0 or max_terms == 0.
  void validate() const;
};

struct PolyTerm {
  TrigMonomial monomial;
  std::int64_t coeff = 0;

  friend bool operator==(const PolyTerm&, const PolyTerm&) = default;
};

/// ⟨0|O(theta)|0⟩ as a plain sum of trigonometric monomials, in canonical
/// monomial order with no zero or duplicate entries.
class ExpectationPolynomial {
 public:
  ExpectationPolynomial() = default;
  /// Sorts and merges `terms`; zero sums are dropped.
  ExpectationPolynomial(std::size_t n_params, std::vector<PolyTerm> terms,
                        TruncationMeta meta = {});

  std::size_t n_params() const { return n_params_; }
  const std::vector<PolyTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const TruncationMeta& meta() const { return meta_; }

  /// Number of parameters the polynomial actually reads (max id + 1).
  std::size_t required_params() const;

  friend bool operator==(const ExpectationPolynomial& a, const ExpectationPolynomial& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::size_t n_params_ = 0;
  std::vector<PolyTerm> terms_;
  TruncationMeta meta_;
};

/**
 * Propagates `observable` backwards through `circuit` (last gate first).
 *
 * After every gate, branches whose word weight exceeds `w_cut` or whose
 * monomial frequency exceeds `nu_cut` are dropped before they can branch
 * further, and counted in the metadata; a term sitting exactly at a cutoff
 * is kept. Terms above the cutoffs in the input observable are dropped up
 * front. Throws ValidationError on qubit mismatch and ResourceError when
 * the live term count passes `max_terms`.
 */
PropagatedObservable propagate(std::span<const PauliTerm> observable, const Circuit& circuit,
                               const TruncationConfig& cfg);

/// Same result as `propagate`, built from `partitions` independent slices
/// of the observable on separate threads and merged afterwards.
PropagatedObservable propagate_partitioned(std::span<const PauliTerm> observable,
                                           const Circuit& circuit, const TruncationConfig& cfg,
                                           std::size_t partitions);

/// Applies one gate in place. Exposed for benchmarks and step-by-step use.
void apply_gate(PropagatedObservable& po, const Gate& gate, const TruncationConfig& cfg);

/// Projects onto |0...0>: keeps words without X/Y letters, each contributing
/// its coefficient unchanged.
ExpectationPolynomial trim(const PropagatedObservable& po);

struct TermStatistics {
  std::map<std::uint32_t, std::uint64_t> weight;
  std::map<std::uint32_t, std::uint64_t> frequency;
  std::map<std::uint32_t, std::uint64_t> surviving_weight;
  std::map<std::uint32_t, std::uint64_t> surviving_frequency;
};

/// Weight and frequency histograms over all terms, and over the terms that
/// survive trimming.
TermStatistics term_statistics(const PropagatedObservable& po);

}  // namespace pauliprop
