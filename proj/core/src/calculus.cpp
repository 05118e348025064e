#include "pauliprop/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "pauliprop/errors.hpp"

namespace pauliprop {
namespace {

double ipow(double base, unsigned e) {
  double r = 1.0;
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace

PolynomialEvaluator::PolynomialEvaluator(const ExpectationPolynomial& poly)
    : required_params_(poly.required_params()) {
  coeffs_.reserve(poly.size());
  offsets_.reserve(poly.size() + 1);
  offsets_.push_back(0);
  for (const auto& term : poly.terms()) {
    coeffs_.push_back(static_cast<double>(term.coeff));
    const TrigMonomial& m = term.monomial;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const TrigFactor f = m.factor(i);
      if (groups_.size() > offsets_.back() && groups_.back().param == f.param) {
        auto& g = groups_.back();
        (f.kind == Trig::Sin ? g.sin_exp : g.cos_exp) += static_cast<std::uint16_t>(f.exponent);
      } else {
        Group g{f.param, 0, 0};
        (f.kind == Trig::Sin ? g.sin_exp : g.cos_exp) = static_cast<std::uint16_t>(f.exponent);
        groups_.push_back(g);
      }
    }
    max_groups_ = std::max<std::size_t>(max_groups_, groups_.size() - offsets_.back());
    offsets_.push_back(static_cast<std::uint32_t>(groups_.size()));
  }
}

void PolynomialEvaluator::check(std::span<const double> theta) const {
  if (theta.size() < required_params_) {
    throw ValidationError("parameter vector has " + std::to_string(theta.size()) +
                          " entries, polynomial needs " + std::to_string(required_params_));
  }
}

void PolynomialEvaluator::fill_trig(std::span<const double> theta, std::vector<double>& sin,
                                    std::vector<double>& cos) {
  sin.resize(theta.size());
  cos.resize(theta.size());
  for (std::size_t p = 0; p < theta.size(); ++p) {
    sin[p] = std::sin(theta[p]);
    cos[p] = std::cos(theta[p]);
  }
}

double PolynomialEvaluator::value(std::span<const double> theta) const {
  check(theta);
  std::vector<double> sines, cosines;
  fill_trig(theta, sines, cosines);
  double total = 0.0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double prod = coeffs_[t];
    for (std::uint32_t k = offsets_[t]; k < offsets_[t + 1]; ++k) {
      const Group& g = groups_[k];
      prod *= ipow(sines[g.param], g.sin_exp) * ipow(cosines[g.param], g.cos_exp);
    }
    total += prod;
  }
  return total;
}

double PolynomialEvaluator::value_and_gradient(std::span<const double> theta,
                                               std::vector<double>& grad) const {
  check(theta);
  std::vector<double> sines, cosines;
  fill_trig(theta, sines, cosines);
  grad.assign(theta.size(), 0.0);
  std::vector<double> vals(max_groups_), derivs(max_groups_), suffix(max_groups_ + 1);
  double total = 0.0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    const std::uint32_t begin = offsets_[t];
    const std::size_t count = offsets_[t + 1] - begin;
    for (std::size_t k = 0; k < count; ++k) {
      const Group& g = groups_[begin + k];
      const double s = sines[g.param];
      const double c = cosines[g.param];
      const unsigned a = g.sin_exp;
      const unsigned b = g.cos_exp;
      vals[k] = ipow(s, a) * ipow(c, b);
      // d/dx sin^a cos^b = a sin^(a-1) cos^(b+1) - b sin^(a+1) cos^(b-1)
      double d = 0.0;
      if (a > 0) d += a * ipow(s, a - 1) * ipow(c, b + 1);
      if (b > 0) d -= b * ipow(s, a + 1) * ipow(c, b - 1);
      derivs[k] = d;
    }
    suffix[count] = 1.0;
    for (std::size_t k = count; k-- > 0;) suffix[k] = suffix[k + 1] * vals[k];
    double prefix = coeffs_[t];
    for (std::size_t k = 0; k < count; ++k) {
      grad[groups_[begin + k].param] += prefix * derivs[k] * suffix[k + 1];
      prefix *= vals[k];
    }
    total += prefix;
  }
  return total;
}

double evaluate(const ExpectationPolynomial& poly, std::span<const double> theta) {
  return PolynomialEvaluator(poly).value(theta);
}

std::vector<double> gradient(const ExpectationPolynomial& poly, std::span<const double> theta) {
  std::vector<double> grad;
  PolynomialEvaluator(poly).value_and_gradient(theta, grad);
  return grad;
}

double parameter_shift(const ExpectationPolynomial& poly, std::span<const double> theta,
                       std::size_t j) {
  if (j >= theta.size()) throw ValidationError("shift index outside parameter vector");
  for (const auto& term : poly.terms()) {
    if (term.monomial.exponent_of(static_cast<std::uint32_t>(j)) > 1) {
      throw ValidationError("parameter-shift rule needs parameter " + std::to_string(j) +
                            " to appear at most once per monomial; found " +
                            term.monomial.to_string());
    }
  }
  const PolynomialEvaluator eval(poly);
  std::vector<double> shifted(theta.begin(), theta.end());
  shifted[j] = theta[j] + std::numbers::pi / 2;
  const double plus = eval.value(shifted);
  shifted[j] = theta[j] - std::numbers::pi / 2;
  const double minus = eval.value(shifted);
  return (plus - minus) / 2;
}

std::vector<double> finite_difference_gradient(const ExpectationPolynomial& poly,
                                               std::span<const double> theta, double h) {
  const PolynomialEvaluator eval(poly);
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> grad(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    shifted[j] = theta[j] + h;
    const double plus = eval.value(shifted);
    shifted[j] = theta[j] - h;
    const double minus = eval.value(shifted);
    shifted[j] = theta[j];
    grad[j] = (plus - minus) / (2 * h);
  }
  return grad;
}

namespace {

template <typename Fn>
void parallel_rows(std::size_t rows, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows)));
  if (threads <= 1) {
    fn(0, rows);
    return;
  }
  std::vector<std::jthread> workers;
  const std::size_t chunk = (rows + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(rows, begin + chunk);
    if (begin < end) workers.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
}

}  // namespace

std::vector<double> evaluate_batch(const ExpectationPolynomial& poly,
                                   const std::vector<std::vector<double>>& thetas,
                                   unsigned threads) {
  std::vector<double> out(thetas.size());
  parallel_rows(thetas.size(), threads, [&](std::size_t begin, std::size_t end) {
    const PolynomialEvaluator eval(poly);
    for (std::size_t r = begin; r < end; ++r) out[r] = eval.value(thetas[r]);
  });
  return out;
}

std::vector<std::vector<double>> gradient_batch(const ExpectationPolynomial& poly,
                                                const std::vector<std::vector<double>>& thetas,
                                                unsigned threads) {
  std::vector<std::vector<double>> out(thetas.size());
  parallel_rows(thetas.size(), threads, [&](std::size_t begin, std::size_t end) {
    const PolynomialEvaluator eval(poly);
    for (std::size_t r = begin; r < end; ++r) eval.value_and_gradient(thetas[r], out[r]);
  });
  return out;
}

}  // namespace pauliprop
