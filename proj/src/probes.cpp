#include "bathsense/probes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bathsense {

std::string_view to_string(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::qubit: return "qubit";
    case ProbeKind::qutrit: return "qutrit";
    case ProbeKind::two_qubit_register: return "register";
  }
  return "unknown";
}

ProbeKind probe_kind_from_string(std::string_view name) {
  if (name == "qubit") return ProbeKind::qubit;
  if (name == "qutrit") return ProbeKind::qutrit;
  if (name == "register") return ProbeKind::two_qubit_register;
  throw std::invalid_argument("unknown probe kind '" + std::string(name) +
                              "' (expected qubit, qutrit or register)");
}

EnergySpectrum ProbeSpec::spectrum() const {
  std::vector<double> levels;
  levels.reserve(deltas.size());
  for (int d : deltas) levels.push_back(0.5 * d * omega0);
  return EnergySpectrum(std::move(levels));
}

ProbeSpec build_probe(ProbeKind kind, double omega0) {
  if (!(std::isfinite(omega0) && omega0 > 0.0))
    throw std::invalid_argument("build_probe: omega0 must be > 0");
  switch (kind) {
    case ProbeKind::qubit: return {kind, {-1, +1}, omega0};
    case ProbeKind::qutrit: return {kind, {-2, 0, +2}, omega0};
    // sigma_3 x I + I x sigma_3 on |00>, |01>, |10>, |11>
    case ProbeKind::two_qubit_register: return {kind, {-2, 0, 0, +2}, omega0};
  }
  throw std::invalid_argument("build_probe: unknown probe kind");
}

std::string_view to_string(PreparationLabel label) {
  switch (label) {
    case PreparationLabel::max_coherent: return "max_coherent";
    case PreparationLabel::qutrit_qubit_like: return "qutrit_qubit_like";
    case PreparationLabel::bell_phi_plus: return "bell_phi_plus";
    case PreparationLabel::bell_phi_minus: return "bell_phi_minus";
    case PreparationLabel::bell_psi_plus: return "bell_psi_plus";
    case PreparationLabel::bell_psi_minus: return "bell_psi_minus";
    case PreparationLabel::custom: return "custom";
  }
  return "unknown";
}

PreparationLabel preparation_label_from_string(std::string_view name) {
  for (PreparationLabel l :
       {PreparationLabel::max_coherent, PreparationLabel::qutrit_qubit_like,
        PreparationLabel::bell_phi_plus, PreparationLabel::bell_phi_minus,
        PreparationLabel::bell_psi_plus, PreparationLabel::bell_psi_minus, PreparationLabel::custom})
    if (name == to_string(l)) return l;
  throw std::invalid_argument("unknown preparation '" + std::string(name) + "'");
}

Preparation Preparation::named(ProbeKind kind, PreparationLabel label) {
  const double r2 = 1.0 / std::numbers::sqrt2;
  const auto require_register = [&] {
    if (kind != ProbeKind::two_qubit_register)
      throw std::invalid_argument("Bell preparations require the two-qubit register");
  };
  switch (label) {
    case PreparationLabel::max_coherent: {
      const int n = build_probe(kind, 1.0).dim();
      return {label, std::vector<Complex>(static_cast<std::size_t>(n), 1.0 / std::sqrt(double(n)))};
    }
    case PreparationLabel::qutrit_qubit_like:
      if (kind != ProbeKind::qutrit)
        throw std::invalid_argument("qutrit_qubit_like preparation requires a qutrit");
      return {label, {r2, 0.0, r2}};
    case PreparationLabel::bell_phi_plus: require_register(); return {label, {r2, 0.0, 0.0, r2}};
    case PreparationLabel::bell_phi_minus: require_register(); return {label, {r2, 0.0, 0.0, -r2}};
    case PreparationLabel::bell_psi_plus: require_register(); return {label, {0.0, r2, r2, 0.0}};
    case PreparationLabel::bell_psi_minus: require_register(); return {label, {0.0, r2, -r2, 0.0}};
    case PreparationLabel::custom:
      throw std::invalid_argument("custom preparation needs explicit amplitudes");
  }
  throw std::invalid_argument("unknown preparation label");
}

Preparation Preparation::custom(std::vector<Complex> amplitudes) {
  double norm2 = 0.0;
  for (const Complex& c : amplitudes) norm2 += std::norm(c);
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
    throw std::invalid_argument("custom preparation amplitudes must have unit norm");
  return {PreparationLabel::custom, std::move(amplitudes)};
}

DensityMatrix prepare(const ProbeSpec& probe, const Preparation& prep) {
  if (static_cast<int>(prep.amplitudes.size()) != probe.dim())
    throw std::invalid_argument("preparation length does not match the probe dimension");
  return DensityMatrix::pure(prep.amplitudes);
}

DensityMatrix prepare(const ProbeSpec& probe, PreparationLabel label) {
  return prepare(probe, Preparation::named(probe.kind, label));
}

DensityMatrix DephasingChannel::apply(const DensityMatrix& rho) const {
  if (rho.dim() != damping.rows()) throw std::invalid_argument("channel dimension mismatch");
  return DensityMatrix::from_matrix(
      hadamard_product(damping.cast<Complex>(), hadamard_product(phases, rho.matrix())));
}

DephasingChannel dephasing_channel(const ProbeSpec& probe, double gamma, double xi) {
  if (std::isnan(gamma) || gamma > 0.0) throw std::domain_error("dephasing_channel: gamma must be <= 0");
  if (!std::isfinite(xi)) throw std::domain_error("dephasing_channel: xi must be finite");
  const int n = probe.dim();
  DephasingChannel ch{RealMatrix(n, n), Matrix(n, n)};
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const int dj = probe.deltas[static_cast<std::size_t>(j)];
      const int dk = probe.deltas[static_cast<std::size_t>(k)];
      const double spread = 0.25 * (dj - dk) * (dj - dk);
      ch.damping(j, k) = spread == 0.0 ? 1.0 : std::exp(spread * gamma);
      const double shift = 0.25 * (dj * dj - dk * dk);
      ch.phases(j, k) = shift == 0.0 ? Complex(1.0, 0.0) : std::polar(1.0, xi * shift);
    }
  }
  return ch;
}

DensityMatrix evolve(const DensityMatrix& rho0, const ProbeSpec& probe, const SpectralParams& bath,
                     double temperature, double t, const QuadratureSettings& settings,
                     PhaseTreatment phase) {
  if (rho0.dim() != probe.dim()) throw std::invalid_argument("evolve: state/probe dimension mismatch");
  const double gamma = decoherence_exponent(bath, t, temperature, settings).value;
  const double xi = phase == PhaseTreatment::compute ? phase_function(bath, t, settings).value : 0.0;
  return dephasing_channel(probe, gamma, xi).apply(rho0);
}

}  // namespace bathsense
