#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace bathsense {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
};

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  std::size_t max_panels = 1'000'000;
};

struct KronrodPair {
  double kronrod = 0.0;
  double gauss = 0.0;
  double abs_kronrod = 0.0;  // Kronrod estimate of the integral of |f|
};

/// 21-point Kronrod extension of the 10-point Gauss-Legendre rule on [a, b].
KronrodPair gauss_kronrod_21(const std::function<double(double)>& f, double a, double b);

struct Interval {
  double lo;
  double hi;
};

/// Globally adaptive Gauss-Kronrod quadrature over the given initial panels.
/// The panel with the largest |K21 - G10| is bisected until the summed
/// estimate is within max(abs_tol, rel_tol * |value|).
///
/// Throws NumericalFailure (carrying the current error estimate) when the
/// panel budget is exhausted or a panel shrinks below floating resolution.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const Interval> panels,
                                    const AdaptiveOptions& options);

/// Same as above over the consecutive panels
/// [b0, b1], [b1, b2], ... given by `breakpoints`.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints,
                                    const AdaptiveOptions& options);

}  // namespace bathsense
