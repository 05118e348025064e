#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pauliprop {

enum class Trig : std::uint8_t { Cos = 0, Sin = 1 };

struct TrigFactor {
  std::uint32_t param = 0;
  Trig kind = Trig::Cos;
  std::uint32_t exponent = 1;

  friend bool operator==(const TrigFactor&, const TrigFactor&) = default;
};

/**
 * Canonical product of sin/cos factors, e.g. cos(t8) * sin(t1)^2.
 *
 * Factors are stored packed as (param << 9 | kind << 8 | exponent) in a
 * vector kept sorted by (param, kind), so equality and hashing act on the
 * packed words directly. The empty monomial is the constant 1.
 */
class TrigMonomial {
 public:
  static constexpr std::uint32_t kMaxExponent = 255;
  static constexpr std::uint32_t kMaxParam = (1u << 23) - 1;

  TrigMonomial() = default;

  /// Builds a canonical monomial from arbitrary factors; repeated
  /// (param, kind) keys accumulate exponents.
  static TrigMonomial from_factors(const std::vector<TrigFactor>& factors);

  /// Multiplies in one sin/cos factor; frequency grows by exactly one.
  void multiply(std::uint32_t param, Trig kind);
  TrigMonomial multiplied(std::uint32_t param, Trig kind) const {
    TrigMonomial m = *this;
    m.multiply(param, kind);
    return m;
  }

  /// Sum of exponents, i.e. the number of sin/cos factors.
  std::uint32_t frequency() const { return frequency_; }
  bool empty() const { return packed_.empty(); }
  std::size_t size() const { return packed_.size(); }

  TrigFactor factor(std::size_t i) const {
    const std::uint32_t p = packed_[i];
    return {p >> 9, static_cast<Trig>((p >> 8) & 1u), p & 0xffu};
  }
  std::vector<TrigFactor> factors() const;

  /// Combined sin and cos exponent of one parameter.
  std::uint32_t exponent_of(std::uint32_t param) const;
  /// Largest param id referenced, or -1 for the constant monomial.
  std::int64_t max_param() const {
    return packed_.empty() ? -1 : static_cast<std::int64_t>(packed_.back() >> 9);
  }

  /// Human-readable form, e.g. "cos(t8)*sin(t1)^2"; "1" when empty.
  std::string to_string() const;

  friend bool operator==(const TrigMonomial& a, const TrigMonomial& b) {
    return a.packed_ == b.packed_;
  }
  friend std::strong_ordering operator<=>(const TrigMonomial& a, const TrigMonomial& b) {
    return a.packed_ <=> b.packed_;
  }

  template <typename H>
  friend H AbslHashValue(H h, const TrigMonomial& m) {
    return H::combine(std::move(h), m.packed_);
  }

 private:
  static std::uint32_t pack(std::uint32_t param, Trig kind, std::uint32_t exponent) {
    return (param << 9) | (static_cast<std::uint32_t>(kind) << 8) | exponent;
  }

  std::vector<std::uint32_t> packed_;
  std::uint32_t frequency_ = 0;
};

}  // namespace pauliprop
