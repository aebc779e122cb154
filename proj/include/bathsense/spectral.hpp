#pragma once

#include <cstddef>

#include "bathsense/quadrature.hpp"

namespace bathsense {

/// Ohmic-like spectral density J_s(w) = w_c (w / w_c)^s exp(-w / w_c).
/// s < 1 is sub-Ohmic, s = 1 Ohmic, s > 1 super-Ohmic.
class SpectralParams {
 public:
  /// Throws std::invalid_argument unless s > 0 and omega_c > 0 (both finite).
  SpectralParams(double s, double omega_c);

  double s() const noexcept { return s_; }
  double omega_c() const noexcept { return omega_c_; }

  friend bool operator==(const SpectralParams&, const SpectralParams&) = default;

 private:
  double s_;
  double omega_c_;
};

struct QuadratureSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  /// The frequency integrals are truncated at omega_max_factor * omega_c
  /// (extended further if the analytic tail bound still exceeds abs_tol).
  double omega_max_factor = 40.0;
  std::size_t max_panels = 1'000'000;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;

  friend bool operator==(const QuadratureSettings&, const QuadratureSettings&) = default;
};

/// Throws std::domain_error for negative (or non-finite) omega.
double spectral_density(const SpectralParams& bath, double omega);

/// Decoherence exponent
///   Gamma(t|T) = -int_0^inf J(w) coth(w / 2T) (1 - cos wt) / w^2 dw,
/// with coth == 1 at T = 0. Always <= 0, and exactly 0 at t = 0.
/// `error` holds the quadrature estimate plus the truncated-tail bound.
QuadratureResult decoherence_exponent(const SpectralParams& bath, double t, double temperature,
                                      const QuadratureSettings& settings = {});

/// Temperature-independent phase
///   xi(t) = -int_0^inf J(w) (wt - sin wt) / w^2 dw.
QuadratureResult phase_function(const SpectralParams& bath, double t,
                                const QuadratureSettings& settings = {});

}  // namespace bathsense
