/**
 * @file quadrature.hpp
 * @brief Globally adaptive Gauss-Kronrod (7/15) integration on finite,
 *        semi-infinite and tail intervals, including nested integrals whose
 *        integrand is itself a quadrature result.
 *
 * The error estimate of a panel follows the QUADPACK recipe for the
 * G7/K15 pair. Refinement always bisects the panel with the largest estimate,
 * and panels are summed in ascending order at the end, so results are
 * bit-reproducible.
 */
#pragma once

#include <cstddef>
#include <functional>

namespace casimir {

struct QuadratureSettings {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  /// Budget of integrand calls at this nesting level.
  std::size_t max_evaluations = 1'000'000;
  /// Scale lambda of the map x = lambda t / (1 - t) used for [0, inf).
  double scale = 1.0;

  /// Throws std::invalid_argument when no tolerance is positive or scale <= 0.
  void validate() const;
  bool operator==(const QuadratureSettings&) const = default;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  /// Total leaf integrand calls, inner levels included.
  std::size_t evaluations = 0;
  bool converged = true;
};

using Integrand = std::function<double(double)>;
using NestedIntegrand = std::function<IntegralResult(double)>;

/// Integral over [a, b].
IntegralResult integrate_interval(const Integrand& f, double a, double b, const QuadratureSettings& settings);

/// Integral over [0, inf) via x = lambda t / (1 - t).
IntegralResult integrate_semi_infinite(const Integrand& f, const QuadratureSettings& settings);

/// Integral over [a, inf), a > 0, via p = a / u.
IntegralResult integrate_tail_interval(const Integrand& f, double a, const QuadratureSettings& settings);

/// Integral over [a, b] of an integrand that is itself an approximate integral.
/// The reported error is the outer estimate plus the integral of inner estimates.
IntegralResult integrate_nested_interval(const NestedIntegrand& f, double a, double b,
                                         const QuadratureSettings& settings);

/// Semi-infinite counterpart of integrate_nested_interval.
IntegralResult integrate_nested_semi_infinite(const NestedIntegrand& f, const QuadratureSettings& settings);

/// Inner settings derived for a nested integral: rel_tol one order tighter than the outer one.
QuadratureSettings tightened_inner(const QuadratureSettings& outer, const QuadratureSettings& inner);

/// Integral of g(x, y) over [0, inf)^2 with x outer and y inner.
IntegralResult integrate_double(const std::function<double(double, double)>& g, const QuadratureSettings& outer,
                                const QuadratureSettings& inner);

}  // namespace casimir
