#include "bathsense/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bathsense/golden_section.hpp"

namespace bathsense {

namespace {

constexpr double kDegenerateGap = 1e-14;
constexpr int kTimeGridPoints = 200;

void check_temperature(double T, const char* name) {
  if (std::isnan(T) || T < 0.0) throw std::invalid_argument(std::string(name) + " must be >= 0");
}

void check_priors(double z1, double z2) {
  if (!(z1 >= 0.0 && z2 >= 0.0) || std::abs(z1 + z2 - 1.0) > 1e-12)
    throw std::invalid_argument("priors must be nonnegative and sum to 1");
}

// tanh(omega0 / 2T) with the T = 0 and T = inf limits.
double thermal_polarization(double omega0, double T) {
  if (T == 0.0) return 1.0;
  return std::tanh(omega0 / (2.0 * T));
}

// |b| + sqrt(b^2 + k a^2) with a = g1 - g2 and b = g1^4 - g2^4, written so
// that nearly equal g1, g2 lose no precision.
double coherent_trace_norm(double gamma1, double gamma2, double k) {
  const double g1 = std::exp(gamma1);
  const double g2 = std::exp(gamma2);
  const double a = g1 - g2;
  const double b = a * (g1 + g2) * (g1 * g1 + g2 * g2);
  return std::abs(b) + std::sqrt(b * b + k * a * a);
}

double dephased_error(ProbeKind kind, PreparationLabel label, double gamma1, double gamma2) {
  const ProbeSpec probe = build_probe(kind, 1.0);
  return dephased_helstrom(probe, prepare(probe, label), gamma1, gamma2).p_error;
}

double equilibrium_error_for(ProbeKind kind, double omega0, double T1, double T2) {
  return equilibrium_error(build_probe(kind, omega0).spectrum(), T1, T2);
}

}  // namespace

void Scenario::validate() const {
  check_temperature(T1, "T1");
  check_temperature(T2, "T2");
  if (!std::isfinite(T1) || !std::isfinite(T2))
    throw std::invalid_argument("dephasing scenarios need finite temperatures");
  if (!(std::isfinite(t) && t >= 0.0)) throw std::invalid_argument("t must be finite and >= 0");
  check_priors(z1, z2);
  if (static_cast<int>(prep.amplitudes.size()) != probe.dim())
    throw std::invalid_argument("preparation does not match the probe dimension");
}

double equilibrium_error(const EnergySpectrum& spectrum, double T1, double T2, double z1, double z2) {
  check_priors(z1, z2);
  return helstrom(gibbs_state(spectrum, T1), gibbs_state(spectrum, T2), z1, z2).p_error;
}

double equilibrium_error_qubit_closed(double omega0, double T1, double T2) {
  if (!(omega0 > 0.0)) throw std::invalid_argument("omega0 must be > 0");
  check_temperature(T1, "T1");
  check_temperature(T2, "T2");
  const double gap = thermal_polarization(omega0, T1) - thermal_polarization(omega0, T2);
  return 0.5 * (1.0 - 0.5 * std::abs(gap));
}

double equilibrium_error_highT(const EnergySpectrum& spectrum, double beta1, double beta2) {
  const auto& levels = spectrum.levels();
  const double n = static_cast<double>(levels.size());
  const double mean = std::accumulate(levels.begin(), levels.end(), 0.0) / n;
  double spread = 0.0;
  for (double e : levels) spread += std::abs((e - mean) * (beta1 - beta2));
  return 0.5 * (1.0 - spread / (2.0 * n));
}

HelstromResult dephased_helstrom(const ProbeSpec& probe, const DensityMatrix& rho0, double gamma1,
                                 double gamma2, double xi, double z1, double z2) {
  if (rho0.dim() != probe.dim()) throw std::invalid_argument("state/probe dimension mismatch");
  const RealMatrix v1 = dephasing_channel(probe, gamma1, 0.0).damping;
  const RealMatrix v2 = dephasing_channel(probe, gamma2, 0.0).damping;
  const Matrix lambda = z2 * hadamard_product(v2.cast<Complex>(), rho0.matrix()) -
                        z1 * hadamard_product(v1.cast<Complex>(), rho0.matrix());
  HelstromResult out = helstrom_from_lambda(lambda, z1, z2);
  if (xi != 0.0) {
    const int n = probe.dim();
    Matrix d = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
      const int dk = probe.deltas[static_cast<std::size_t>(k)];
      d(k, k) = std::polar(1.0, 0.25 * xi * dk * dk);
    }
    out.povm_projector_1 = d * out.povm_projector_1 * d.adjoint();
  }
  return out;
}

DiscriminationOutput nonequilibrium_error(const Scenario& sc, const QuadratureSettings& settings,
                                          PhaseTreatment phase, bool with_povm) {
  sc.validate();
  const DensityMatrix rho0 = prepare(sc.probe, sc.prep);

  DiscriminationOutput out;
  out.gamma1 = decoherence_exponent(sc.bath, sc.t, sc.T1, settings).value;
  out.gamma2 = sc.T2 == sc.T1 ? out.gamma1 : decoherence_exponent(sc.bath, sc.t, sc.T2, settings).value;
  out.xi = phase == PhaseTreatment::compute ? phase_function(sc.bath, sc.t, settings).value : 0.0;

  HelstromResult h = dephased_helstrom(sc.probe, rho0, out.gamma1, out.gamma2, out.xi, sc.z1, sc.z2);
  out.p_neq = h.p_error;
  out.p_eq = equilibrium_error(sc.probe.spectrum(), sc.T1, sc.T2, sc.z1, sc.z2);
  out.eta = gain_factor(out.p_neq, out.p_eq);
  if (with_povm) out.povm = std::move(h);
  return out;
}

double qubit_error_closed(double rho01_abs, double gamma1, double gamma2) {
  return 0.5 * (1.0 - rho01_abs * std::abs(std::exp(gamma1) - std::exp(gamma2)));
}

double qutrit_error_closed(double gamma1, double gamma2) {
  if (std::abs(std::exp(gamma1) - std::exp(gamma2)) < kDegenerateGap) return 0.5;
  return 0.5 * (1.0 - coherent_trace_norm(gamma1, gamma2, 8.0) / 6.0);
}

double qutrit_qubit_like_error(double gamma1, double gamma2, double rho01_abs) {
  return 0.5 - 0.5 * rho01_abs * std::abs(std::exp(4.0 * gamma1) - std::exp(4.0 * gamma2));
}

double register_error_closed(double gamma1, double gamma2) {
  if (std::abs(std::exp(gamma1) - std::exp(gamma2)) < kDegenerateGap) return 0.5;
  return 0.5 * (1.0 - coherent_trace_norm(gamma1, gamma2, 16.0) / 8.0);
}

double coherence(const DensityMatrix& rho) {
  double c = 0.0;
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j)
      if (i != j) c += std::abs(rho(i, j));
  return c;
}

double gain_factor(double p_num, double p_den) {
  if (!(p_den > 0.0)) throw std::domain_error("gain_factor: denominator must be > 0");
  return 1.0 - p_num / p_den;
}

std::string_view to_string(GainKind kind) {
  switch (kind) {
    case GainKind::eta: return "eta";
    case GainKind::eta3: return "eta3";
    case GainKind::eta2: return "eta2";
    case GainKind::eta_c: return "eta_c";
    case GainKind::eta4: return "eta4";
    case GainKind::eta42: return "eta42";
  }
  return "unknown";
}

GainKind gain_kind_from_string(std::string_view name) {
  for (GainKind k : {GainKind::eta, GainKind::eta3, GainKind::eta2, GainKind::eta_c, GainKind::eta4,
                     GainKind::eta42})
    if (name == to_string(k)) return k;
  throw std::invalid_argument("unknown gain factor '" + std::string(name) +
                              "' (expected eta, eta3, eta2, eta_c, eta4 or eta42)");
}

double named_gain(GainKind kind, const GainInputs& in) {
  using enum ProbeKind;
  using enum PreparationLabel;
  const auto qubit_neq = [&] { return dephased_error(qubit, max_coherent, in.gamma1, in.gamma2); };
  const auto qutrit_neq = [&] { return dephased_error(qutrit, max_coherent, in.gamma1, in.gamma2); };
  const auto register_neq = [&] {
    return dephased_error(two_qubit_register, max_coherent, in.gamma1, in.gamma2);
  };
  switch (kind) {
    case GainKind::eta:
      return gain_factor(qubit_neq(), equilibrium_error_for(qubit, in.omega0, in.T1, in.T2));
    case GainKind::eta3:
      return gain_factor(qutrit_neq(), equilibrium_error_for(qutrit, in.omega0, in.T1, in.T2));
    case GainKind::eta2:
      return gain_factor(dephased_error(qutrit, qutrit_qubit_like, in.gamma1, in.gamma2), qubit_neq());
    case GainKind::eta_c: return gain_factor(qutrit_neq(), qubit_neq());
    case GainKind::eta4:
      return gain_factor(register_neq(),
                         equilibrium_error_for(two_qubit_register, in.omega0, in.T1, in.T2));
    case GainKind::eta42: {
      const double p = qubit_neq();
      return gain_factor(register_neq(), p * p);
    }
  }
  throw std::invalid_argument("named_gain: unknown kind");
}

double bath_bound(double d_nu) {
  if (!(d_nu >= 0.0 && d_nu <= 1.0)) throw std::domain_error("bath_bound: trace distance must be in [0, 1]");
  return 0.5 * (1.0 - d_nu);
}

TimeOptimum optimize_time(const Scenario& sc, double t_max, const QuadratureSettings& settings) {
  if (!(std::isfinite(t_max) && t_max > 0.0)) throw std::invalid_argument("t_max must be > 0");
  Scenario probe_sc = sc;
  probe_sc.t = 0.0;
  probe_sc.validate();
  const auto p_at = [&](double t) {
    probe_sc.t = t;
    return nonequilibrium_error(probe_sc, settings, PhaseTreatment::skip).p_neq;
  };

  const double step = t_max / kTimeGridPoints;
  int best = 1;
  double best_p = p_at(step);
  for (int i = 2; i <= kTimeGridPoints; ++i) {
    const double p = p_at(step * i);
    if (p < best_p) {
      best = i;
      best_p = p;
    }
  }

  const double lo = step * (best - 1);
  const double hi = step * std::min(best + 1, kTimeGridPoints);
  const ScalarMinimum refined = golden_section_minimize(p_at, lo, hi, 1e-4 * t_max);
  if (refined.fx < best_p && refined.x > 0.0) return {refined.x, refined.fx};
  return {step * best, best_p};
}

}  // namespace bathsense
