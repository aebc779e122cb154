#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bathsense/qstate.hpp"
#include "bathsense/spectral.hpp"

namespace bathsense {

enum class ProbeKind { qubit, qutrit, two_qubit_register };

/// Names used on the command line and in CSV: "qubit", "qutrit", "register".
std::string_view to_string(ProbeKind kind);
/// Throws std::invalid_argument for an unknown name.
ProbeKind probe_kind_from_string(std::string_view name);

/// Level spacings delta_n with H0 = (omega0 / 2) sum_n delta_n |n><n|.
/// The register basis is ordered |00>, |01>, |10>, |11>.
struct ProbeSpec {
  ProbeKind kind;
  std::vector<int> deltas;
  double omega0;

  int dim() const noexcept { return static_cast<int>(deltas.size()); }
  /// E_n = delta_n omega0 / 2, ascending.
  EnergySpectrum spectrum() const;
};

/// Throws std::invalid_argument unless omega0 > 0.
ProbeSpec build_probe(ProbeKind kind, double omega0);

enum class PreparationLabel {
  max_coherent,
  qutrit_qubit_like,
  bell_phi_plus,
  bell_phi_minus,
  bell_psi_plus,
  bell_psi_minus,
  custom,
};

std::string_view to_string(PreparationLabel label);
PreparationLabel preparation_label_from_string(std::string_view name);

struct Preparation {
  PreparationLabel label;
  std::vector<Complex> amplitudes;

  /// Canonical amplitudes for a named label on the given probe. Throws
  /// std::invalid_argument when the label does not fit the probe
  /// (qubit-like needs a qutrit, Bell states need the register).
  static Preparation named(ProbeKind kind, PreparationLabel label);
  /// Throws std::invalid_argument unless the vector has norm 1 (within 1e-12).
  static Preparation custom(std::vector<Complex> amplitudes);
};

DensityMatrix prepare(const ProbeSpec& probe, const Preparation& prep);
DensityMatrix prepare(const ProbeSpec& probe, PreparationLabel label);

/// Entrywise action rho -> V o R o rho of pure dephasing.
struct DephasingChannel {
  RealMatrix damping;  // V_jk = exp((delta_j - delta_k)^2 / 4 * Gamma)
  Matrix phases;       // R_jk = exp(i xi (delta_j^2 - delta_k^2) / 4)

  DensityMatrix apply(const DensityMatrix& rho) const;
};

/// Throws std::domain_error for gamma > 0 (or NaN gamma / xi).
DephasingChannel dephasing_channel(const ProbeSpec& probe, double gamma, double xi);

/// Whether the temperature-independent phase is evaluated or set to zero.
enum class PhaseTreatment { compute, skip };

/// rho(t) = V o R o rho0 in the interaction picture with Gamma(t|T) and xi(t)
/// of the given bath. Quadrature failures propagate as NumericalFailure.
DensityMatrix evolve(const DensityMatrix& rho0, const ProbeSpec& probe, const SpectralParams& bath,
                     double temperature, double t, const QuadratureSettings& settings = {},
                     PhaseTreatment phase = PhaseTreatment::compute);

}  // namespace bathsense
