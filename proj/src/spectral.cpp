#include "bathsense/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "bathsense/errors.hpp"

namespace bathsense {

namespace {

constexpr double kPi = std::numbers::pi;

// Width of the first frequency panel, in units of omega_c.
constexpr double kOriginPanel = 1e-2;
// Presplit into half-period panels beyond this many oscillations.
constexpr double kOscillationThreshold = 50.0;

bool finite_nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }

// Upper bound on int_X^inf x^a e^-x dx; requires X > max(a, 0).
double tail_moment_bound(double a, double X) {
  const double base = std::exp(a * std::log(X) - X);
  return a > 0.0 ? base * X / (X - a) : base;
}

double coth_factor(double omega, double temperature) {
  if (temperature == 0.0) return 1.0;
  const double x = omega / (2.0 * temperature);
  if (x > 20.0) return 1.0;
  return 1.0 / std::tanh(x);
}

double one_minus_cos(double y) {
  const double h = std::sin(0.5 * y);
  return 2.0 * h * h;
}

// y - sin(y) for y >= 0 without cancellation at small y.
double y_minus_sin(double y) {
  if (y < 0.25) {
    const double y2 = y * y;
    double term = y * y2 / 6.0;
    double sum = term;
    for (int k = 2; k <= 7; ++k) {
      term *= -y2 / ((2.0 * k) * (2.0 * k + 1.0));
      sum += term;
    }
    return sum;
  }
  return y - std::sin(y);
}

// J(w) / w^2 in terms of x = w / omega_c.
double density_over_square(const SpectralParams& bath, double omega) {
  const double x = omega / bath.omega_c();
  return std::pow(x, bath.s() - 2.0) * std::exp(-x) / bath.omega_c();
}

struct FrequencyIntegral {
  std::function<double(double)> integrand;  // in omega
  bool singular_at_origin = false;          // integrand ~ omega^(s-1), s < 1
  std::function<double(double)> tail;       // tail bound beyond X = omega / omega_c
};

// Integrates over [0, X omega_c] with X grown from omega_max_factor until the
// analytic tail bound is below abs_tol / 2. The first panel [0, a] is mapped
// to v in [0, 1] through omega = a v^(1/s) when the integrand is singular
// there; that panel is carried on the parameter interval [-1, 0].
QuadratureResult integrate_frequency(const SpectralParams& bath, double t,
                                     const QuadratureSettings& settings,
                                     const FrequencyIntegral& problem) {
  double X = settings.omega_max_factor;
  while (problem.tail(X) > 0.5 * settings.abs_tol && X < 2000.0) X += 10.0;
  const double tail_bound = problem.tail(X);
  const double omega_max = X * bath.omega_c();

  double a = kOriginPanel * bath.omega_c();
  if (t > 0.0) a = std::min(a, kPi / t);

  std::vector<Interval> panels;
  if (problem.singular_at_origin) {
    panels.push_back({-1.0, 0.0});
  } else {
    panels.push_back({0.0, a});
  }

  const double periods = t * omega_max / (2.0 * kPi);
  if (periods > kOscillationThreshold) {
    const double width = kPi / t;
    const double count = std::ceil((omega_max - a) / width);
    if (count > static_cast<double>(settings.max_panels)) {
      std::ostringstream msg;
      msg << "oscillatory frequency integral at t = " << t << " needs " << count
          << " panels, above the budget of " << settings.max_panels;
      throw NumericalFailure(msg.str(), std::numeric_limits<double>::infinity());
    }
    double lo = a;
    for (double k = std::floor(a / width) + 1.0;; k += 1.0) {
      const double hi = k * width;
      if (hi >= omega_max) break;
      if (hi > lo) {
        panels.push_back({lo, hi});
        lo = hi;
      }
    }
    panels.push_back({lo, omega_max});
  } else {
    panels.push_back({a, omega_max});
  }

  const double inv_s = 1.0 / bath.s();
  const std::function<double(double)>& f = problem.integrand;
  std::function<double(double)> mapped = [&](double tau) {
    if (tau >= 0.0) return f(tau);
    const double v = tau + 1.0;
    if (v <= 0.0) return 0.0;
    const double jac = (a * inv_s) * std::pow(v, inv_s - 1.0);
    return f(a * std::pow(v, inv_s)) * jac;
  };

  AdaptiveOptions options{settings.rel_tol, settings.abs_tol, settings.max_panels};
  QuadratureResult r = problem.singular_at_origin ? integrate_adaptive(mapped, panels, options)
                                                  : integrate_adaptive(f, panels, options);
  r.error += tail_bound;
  return r;
}

void check_time(double t) {
  if (!finite_nonnegative(t)) throw std::domain_error("interaction time must be finite and >= 0");
}

}  // namespace

SpectralParams::SpectralParams(double s, double omega_c) : s_(s), omega_c_(omega_c) {
  if (!(std::isfinite(s) && s > 0.0)) throw std::invalid_argument("ohmicity s must be > 0");
  if (!(std::isfinite(omega_c) && omega_c > 0.0))
    throw std::invalid_argument("cutoff omega_c must be > 0");
}

void QuadratureSettings::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be > 0");
  if (!(omega_max_factor >= 30.0) || !std::isfinite(omega_max_factor))
    throw std::invalid_argument("omega_max_factor must be >= 30");
  if (max_panels < 2) throw std::invalid_argument("max_panels must be >= 2");
}

double spectral_density(const SpectralParams& bath, double omega) {
  if (!finite_nonnegative(omega)) throw std::domain_error("spectral_density: omega must be >= 0");
  if (omega == 0.0) return 0.0;
  const double x = omega / bath.omega_c();
  return bath.omega_c() * std::pow(x, bath.s()) * std::exp(-x);
}

QuadratureResult decoherence_exponent(const SpectralParams& bath, double t, double temperature,
                                      const QuadratureSettings& settings) {
  check_time(t);
  if (!finite_nonnegative(temperature))
    throw std::domain_error("decoherence_exponent: temperature must be finite and >= 0");
  settings.validate();
  if (t == 0.0) return {};

  FrequencyIntegral problem;
  problem.integrand = [&](double omega) {
    if (omega <= 0.0) return 0.0;
    return density_over_square(bath, omega) * coth_factor(omega, temperature) *
           one_minus_cos(omega * t);
  };
  problem.singular_at_origin = temperature > 0.0 && bath.s() < 1.0;
  problem.tail = [&](double X) {
    return 2.0 * coth_factor(X * bath.omega_c(), temperature) * tail_moment_bound(bath.s() - 2.0, X);
  };

  QuadratureResult r = integrate_frequency(bath, t, settings, problem);
  r.value = -r.value;
  return r;
}

QuadratureResult phase_function(const SpectralParams& bath, double t,
                                const QuadratureSettings& settings) {
  check_time(t);
  settings.validate();
  if (t == 0.0) return {};

  FrequencyIntegral problem;
  problem.integrand = [&](double omega) {
    if (omega <= 0.0) return 0.0;
    return density_over_square(bath, omega) * y_minus_sin(omega * t);
  };
  problem.tail = [&](double X) { return t * bath.omega_c() * tail_moment_bound(bath.s() - 1.0, X); };

  QuadratureResult r = integrate_frequency(bath, t, settings, problem);
  r.value = -r.value;
  return r;
}

}  // namespace bathsense
