#pragma once

#include <optional>
#include <string_view>

#include "bathsense/probes.hpp"
#include "bathsense/qstate.hpp"
#include "bathsense/spectral.hpp"

namespace bathsense {

/// One discrimination instance: is the bath at T1 or at T2?
struct Scenario {
  ProbeSpec probe;
  Preparation prep;
  SpectralParams bath;
  double T1 = 0.0;
  double T2 = 0.0;
  double z1 = 0.5;
  double z2 = 0.5;
  double t = 0.0;

  /// Throws std::invalid_argument on bad priors, temperatures or time, or a
  /// preparation that does not fit the probe.
  void validate() const;
};

struct DiscriminationOutput {
  double p_eq = 0.5;
  double p_neq = 0.5;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double xi = 0.0;
  /// 1 - p_neq / p_eq for the scenario's own probe.
  double eta = 0.0;
  std::optional<HelstromResult> povm;
};

// Equilibrium probes ---------------------------------------------------------

/// Helstrom error between the two Gibbs states; temperatures may be 0 or +inf.
double equilibrium_error(const EnergySpectrum& spectrum, double T1, double T2, double z1 = 0.5,
                         double z2 = 0.5);

/// Qubit closed form 1/2 [1 - 1/2 |tanh(omega0 / 2T1) - tanh(omega0 / 2T2)|].
double equilibrium_error_qubit_closed(double omega0, double T1, double T2);

/// First-order high-temperature expansion in the inverse temperatures
/// (beta = 0 is the infinite-temperature state). The caller keeps
/// beta * max|E_n| small.
double equilibrium_error_highT(const EnergySpectrum& spectrum, double beta1, double beta2);

// Dephasing probes -----------------------------------------------------------

/// Helstrom discrimination of rho0 dephased with exponents gamma1 and gamma2.
/// The common phase matrix R = D 1 D^dagger (D diagonal unitary) is a
/// similarity on Lambda, so the error is computed on the xi-free operator and
/// only the projectors are rotated by D.
HelstromResult dephased_helstrom(const ProbeSpec& probe, const DensityMatrix& rho0, double gamma1,
                                 double gamma2, double xi = 0.0, double z1 = 0.5, double z2 = 0.5);

/// Full pipeline: both decoherence exponents by quadrature, evolution,
/// Helstrom. Propagates NumericalFailure.
DiscriminationOutput nonequilibrium_error(const Scenario& sc, const QuadratureSettings& settings = {},
                                          PhaseTreatment phase = PhaseTreatment::compute,
                                          bool with_povm = false);

/// 1/2 [1 - |rho_01| |e^gamma1 - e^gamma2|] (equal priors).
double qubit_error_closed(double rho01_abs, double gamma1, double gamma2);

/// Maximally coherent qutrit, equal priors.
double qutrit_error_closed(double gamma1, double gamma2);

/// Qutrit in (|0> + |2>)/sqrt2 (and register in Phi+-):
/// 1/2 - |rho_02| / 2 |e^(4 gamma1) - e^(4 gamma2)|.
double qutrit_qubit_like_error(double gamma1, double gamma2, double rho01_abs = 0.5);

/// Maximally coherent two-qubit register, equal priors.
double register_error_closed(double gamma1, double gamma2);

/// Sum of |rho_ij| over i != j.
double coherence(const DensityMatrix& rho);

// Gain factors ---------------------------------------------------------------

/// 1 - p_num / p_den. Throws std::domain_error if p_den <= 0.
double gain_factor(double p_num, double p_den);

enum class GainKind {
  eta,    // qubit dephasing vs qubit equilibrium
  eta3,   // qutrit max-coherent vs qutrit equilibrium
  eta2,   // qutrit qubit-like vs qubit max-coherent
  eta_c,  // qutrit max-coherent vs qubit max-coherent
  eta4,   // register max-coherent vs register equilibrium
  eta42,  // register max-coherent vs two sequential qubits (p_qubit^2)
};

std::string_view to_string(GainKind kind);
GainKind gain_kind_from_string(std::string_view name);

struct GainInputs {
  double omega0;
  double T1;
  double T2;
  double gamma1;  // Gamma(t|T1)
  double gamma2;  // Gamma(t|T2)
};

/// Evaluates a named gain factor with equal priors via the generic Helstrom
/// pipeline on the canonical preparations.
double named_gain(GainKind kind, const GainInputs& in);

// Bounds and time optimization -----------------------------------------------

/// 1/2 (1 - D(nu1, nu2)). Throws std::domain_error unless d_nu is in [0, 1].
double bath_bound(double d_nu);

struct TimeOptimum {
  double t_star;
  double p_star;
};

/// Minimizes p_neq over t in (0, t_max]: 200-point grid, then golden-section
/// refinement on the bracketing cells down to 1e-4 t_max. Ties go to the
/// smallest t. The scenario's own t is ignored.
TimeOptimum optimize_time(const Scenario& sc, double t_max, const QuadratureSettings& settings = {});

}  // namespace bathsense
