#include "pauliprop/trig_monomial.hpp"

#include <algorithm>

#include "pauliprop/errors.hpp"

namespace pauliprop {

TrigMonomial TrigMonomial::from_factors(const std::vector<TrigFactor>& factors) {
  TrigMonomial m;
  for (const auto& f : factors) {
    if (f.exponent == 0) continue;
    for (std::uint32_t e = 0; e < f.exponent; ++e) m.multiply(f.param, f.kind);
  }
  return m;
}

void TrigMonomial::multiply(std::uint32_t param, Trig kind) {
  if (param > kMaxParam) throw ValidationError("parameter id too large for TrigMonomial");
  const std::uint32_t key = pack(param, kind, 0) >> 8;
  auto it = std::lower_bound(packed_.begin(), packed_.end(), key,
                             [](std::uint32_t p, std::uint32_t k) { return (p >> 8) < k; });
  if (it != packed_.end() && (*it >> 8) == key) {
    if ((*it & 0xffu) == kMaxExponent) throw ResourceError("TrigMonomial exponent overflow");
    ++*it;
  } else {
    packed_.insert(it, pack(param, kind, 1));
  }
  ++frequency_;
}

std::vector<TrigFactor> TrigMonomial::factors() const {
  std::vector<TrigFactor> out;
  out.reserve(packed_.size());
  for (std::size_t i = 0; i < packed_.size(); ++i) out.push_back(factor(i));
  return out;
}

std::uint32_t TrigMonomial::exponent_of(std::uint32_t param) const {
  std::uint32_t total = 0;
  for (std::uint32_t p : packed_) {
    if ((p >> 9) == param) total += p & 0xffu;
  }
  return total;
}

std::string TrigMonomial::to_string() const {
  if (packed_.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < packed_.size(); ++i) {
    const TrigFactor f = factor(i);
    if (i > 0) s += '*';
    s += f.kind == Trig::Sin ? "sin(t" : "cos(t";
    s += std::to_string(f.param);
    s += ')';
    if (f.exponent > 1) s += "^" + std::to_string(f.exponent);
  }
  return s;
}

}  // namespace pauliprop
