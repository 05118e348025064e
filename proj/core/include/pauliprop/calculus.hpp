#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pauliprop/propagator.hpp"

namespace pauliprop {

/**
 * Flattened form of an ExpectationPolynomial for repeated evaluation.
 *
 * Each term is stored as its coefficient plus a run of per-parameter
 * (sin exponent, cos exponent) groups. Evaluation computes sin/cos once
 * per parameter and sums terms in canonical order, so results are
 * reproducible bit for bit.
 */
class PolynomialEvaluator {
 public:
  explicit PolynomialEvaluator(const ExpectationPolynomial& poly);

  std::size_t required_params() const { return required_params_; }

  /// Throws ValidationError when theta is shorter than required_params().
  double value(std::span<const double> theta) const;
  /// Writes the gradient into `grad` (resized to theta.size()) and returns
  /// the value.
  double value_and_gradient(std::span<const double> theta, std::vector<double>& grad) const;

 private:
  struct Group {
    std::uint32_t param;
    std::uint16_t sin_exp;
    std::uint16_t cos_exp;
  };

  void check(std::span<const double> theta) const;
  static void fill_trig(std::span<const double> theta, std::vector<double>& sin,
                        std::vector<double>& cos);

  std::vector<double> coeffs_;
  std::vector<std::uint32_t> offsets_;  // size terms + 1, into groups_
  std::vector<Group> groups_;
  std::size_t required_params_ = 0;
  std::size_t max_groups_ = 0;
};

double evaluate(const ExpectationPolynomial& poly, std::span<const double> theta);

/// Analytic gradient by term-wise differentiation.
std::vector<double> gradient(const ExpectationPolynomial& poly, std::span<const double> theta);

/// (f(theta + pi/2 e_j) - f(theta - pi/2 e_j)) / 2. Requires parameter j to
/// appear with total exponent <= 1 in every monomial; throws
/// ValidationError otherwise.
double parameter_shift(const ExpectationPolynomial& poly, std::span<const double> theta,
                       std::size_t j);

/// Central differences with step h.
std::vector<double> finite_difference_gradient(const ExpectationPolynomial& poly,
                                               std::span<const double> theta, double h = 1e-5);

/// Values for each row of `thetas`, split over up to `threads` workers.
/// Identical to calling evaluate row by row.
std::vector<double> evaluate_batch(const ExpectationPolynomial& poly,
                                   const std::vector<std::vector<double>>& thetas,
                                   unsigned threads = 1);

std::vector<std::vector<double>> gradient_batch(const ExpectationPolynomial& poly,
                                                const std::vector<std::vector<double>>& thetas,
                                                unsigned threads = 1);

}  // namespace pauliprop
