// Acceptance checks. `acceptance` runs every criterion, `acceptance --criterion N`
// runs one; each prints a single PASS/FAIL line and the exit status is nonzero
// if any selected criterion failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

#include "bathsense/discrimination.hpp"
#include "bathsense/probes.hpp"
#include "bathsense/qstate.hpp"
#include "bathsense/spectral.hpp"
#include "bathsense/sweep.hpp"

using namespace bathsense;

namespace {

constexpr double kGammaTol = 1e-8;
constexpr double kXiTol = 1e-8;
constexpr double kEquilibriumTol = 1e-12;
constexpr double kAsymptoteTol = 1e-4;
constexpr double kLimitTol = 1e-12;
constexpr double kClosedFormTol = 1e-10;
constexpr double kTraceTol = 1e-12;
constexpr double kHermiticityTol = 1e-12;
constexpr double kPositivityFloor = -1e-10;
constexpr double kBellTol = 1e-12;

constexpr double kBudget1 = 1.0;
constexpr double kBudget5 = 10.0;
constexpr double kBudget8 = 30.0;
constexpr double kBudget11 = 60.0;

constexpr int kChannelSamples = 1000;
constexpr std::uint64_t kChannelSeed = 20240611;

struct Outcome {
  bool pass;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

// One randomized configuration shared by the channel and phase checks.
struct ChannelSample {
  ProbeKind kind;
  Preparation prep;
  double s;
  double omega_c;
  double T;
  double T2;
  double t;
};

std::vector<ChannelSample> channel_samples() {
  std::mt19937_64 rng(kChannelSeed);
  std::uniform_int_distribution<int> pick(0, 1 << 20);
  std::uniform_real_distribution<double> temp(0.0, 10.0), time(0.0, 30.0);
  const ProbeKind kinds[] = {ProbeKind::qubit, ProbeKind::qutrit, ProbeKind::two_qubit_register};
  const double ss[] = {0.5, 1.0, 3.0};
  const double wcs[] = {0.2, 5.0};
  std::vector<ChannelSample> out;
  for (int i = 0; i < kChannelSamples; ++i) {
    const ProbeKind kind = kinds[pick(rng) % 3];
    std::vector<PreparationLabel> labels{PreparationLabel::max_coherent, PreparationLabel::custom};
    if (kind == ProbeKind::qutrit) labels.push_back(PreparationLabel::qutrit_qubit_like);
    if (kind == ProbeKind::two_qubit_register)
      labels.insert(labels.end(), {PreparationLabel::bell_phi_plus, PreparationLabel::bell_phi_minus,
                                   PreparationLabel::bell_psi_plus, PreparationLabel::bell_psi_minus});
    const PreparationLabel label = labels[static_cast<std::size_t>(pick(rng)) % labels.size()];
    const int dim = build_probe(kind, 1.0).dim();
    Preparation prep = label == PreparationLabel::custom
                           ? Preparation::custom(oracle::random_amplitudes(rng, dim))
                           : Preparation::named(kind, label);
    const double s = ss[pick(rng) % 3];
    const double wc = wcs[pick(rng) % 2];
    const double T = temp(rng);
    const double T2 = temp(rng);
    const double t = time(rng);
    out.push_back({kind, std::move(prep), s, wc, T, T2, t});
  }
  return out;
}

Outcome criterion_1() {
  const Stopwatch sw;
  double worst = 0.0;
  for (double wc : {0.2, 1.0, 5.0})
    for (double t : {0.1, 1.0, 5.0, 20.0}) {
      const double g = decoherence_exponent(SpectralParams(1.0, wc), t, 0.0).value;
      worst = std::max(worst, std::abs(g + 0.5 * std::log1p(wc * wc * t * t)));
    }
  const double elapsed = sw.seconds();
  return {worst <= kGammaTol && elapsed < kBudget1,
          "max |Gamma + ln(1 + wc^2 t^2)/2| = " + sci(worst) + ", " + sci(elapsed) + " s"};
}

Outcome criterion_2() {
  double worst = 0.0;
  for (double t : {1.0, 10.0}) {
    const double x = phase_function(SpectralParams(1.0, 1.0), t).value;
    worst = std::max(worst, std::abs(x - (std::atan(t) - t)));
  }
  return {worst <= kXiTol, "max |xi - (atan t - t)| = " + sci(worst)};
}

Outcome criterion_3() {
  const auto temps = linspace(0.0, 10.0, 50);
  double worst = 0.0;
  double worst_limit = 0.0;
  const double ln3 = std::log(3.0);
  for (double w0 : {ln3 / 2.0, ln3, 2.0 * ln3}) {
    const EnergySpectrum spec = build_probe(ProbeKind::qubit, w0).spectrum();
    for (double T1 : temps)
      for (double T2 : temps)
        worst = std::max(worst, std::abs(equilibrium_error_qubit_closed(w0, T1, T2) - equilibrium_error(spec, T1, T2)));
    worst_limit = std::max(worst_limit, std::abs(equilibrium_error(spec, 1e6, 0.0) - 0.25));
    worst_limit = std::max(worst_limit, std::abs(equilibrium_error_qubit_closed(w0, 1e6, 0.0) - 0.25));
  }
  return {worst <= kEquilibriumTol && worst_limit <= kAsymptoteTol,
          "closed vs generic " + sci(worst) + ", |p(T1=1e6, T2=0) - 1/4| = " + sci(worst_limit)};
}

Outcome criterion_4() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> level(-3.0, 3.0), temp(0.05, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    std::vector<double> e(static_cast<std::size_t>(i % 2 == 0 ? 2 : 3));
    for (double& x : e) x = level(rng);
    std::sort(e.begin(), e.end());
    const double T1 = temp(rng);
    double z = 0.0;
    for (double x : e) z += std::exp(-(x - e.front()) / T1);
    const double expected = 0.5 / z;
    worst = std::max(worst, std::abs(equilibrium_error(EnergySpectrum(e), T1, 0.0) - expected));
  }
  return {worst <= kLimitTol, "max |p(T1, 0) - exp(-E0/T1)/(2Z)| = " + sci(worst)};
}

Outcome criterion_5() {
  const Stopwatch sw;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ug(-5.0, 0.0);
  const ProbeSpec qubit = build_probe(ProbeKind::qubit, 1.0);
  const ProbeSpec qutrit = build_probe(ProbeKind::qutrit, 1.0);
  const ProbeSpec reg = build_probe(ProbeKind::two_qubit_register, 1.0);
  const DensityMatrix q0 = prepare(qubit, PreparationLabel::max_coherent);
  const DensityMatrix t0 = prepare(qutrit, PreparationLabel::max_coherent);
  const DensityMatrix l0 = prepare(qutrit, PreparationLabel::qutrit_qubit_like);
  const DensityMatrix r0 = prepare(reg, PreparationLabel::max_coherent);
  const auto generic = [](const ProbeSpec& p, const DensityMatrix& rho, double g1, double g2) {
    return helstrom(dephasing_channel(p, g1, 0.0).apply(rho), dephasing_channel(p, g2, 0.0).apply(rho)).p_error;
  };
  double worst[4] = {0.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < 1000; ++i) {
    const double g1 = ug(rng), g2 = ug(rng);
    worst[0] = std::max(worst[0], std::abs(qubit_error_closed(0.5, g1, g2) - generic(qubit, q0, g1, g2)));
    worst[1] = std::max(worst[1], std::abs(qutrit_error_closed(g1, g2) - generic(qutrit, t0, g1, g2)));
    worst[2] = std::max(worst[2], std::abs(qutrit_qubit_like_error(g1, g2) - generic(qutrit, l0, g1, g2)));
    worst[3] = std::max(worst[3], std::abs(register_error_closed(g1, g2) - generic(reg, r0, g1, g2)));
  }
  const double elapsed = sw.seconds();
  const double all = *std::max_element(std::begin(worst), std::end(worst));
  return {all <= kClosedFormTol && elapsed < kBudget5,
          "qubit " + sci(worst[0]) + ", qutrit " + sci(worst[1]) + ", qubit-like " + sci(worst[2]) + ", register " +
              sci(worst[3]) + ", " + sci(elapsed) + " s"};
}

Outcome criterion_6() {
  double trace = 0.0, herm = 0.0, min_eig = 1.0;
  int diagonal_changed = 0;
  for (const ChannelSample& c : channel_samples()) {
    const ProbeSpec p = build_probe(c.kind, 1.0);
    const DensityMatrix rho0 = prepare(p, c.prep);
    const Matrix m = evolve(rho0, p, SpectralParams(c.s, c.omega_c), c.T, c.t).matrix();
    trace = std::max(trace, std::abs(m.trace() - 1.0));
    herm = std::max(herm, (m - m.adjoint()).cwiseAbs().maxCoeff());
    for (double ev : oracle::charpoly_eigenvalues(m)) min_eig = std::min(min_eig, ev);
    for (int i = 0; i < p.dim(); ++i)
      if (m(i, i) != rho0(i, i)) ++diagonal_changed;
  }
  return {trace <= kTraceTol && herm <= kHermiticityTol && min_eig >= kPositivityFloor && diagonal_changed == 0,
          "trace " + sci(trace) + ", hermiticity " + sci(herm) + ", min eigenvalue " + sci(min_eig) +
              ", changed diagonals " + std::to_string(diagonal_changed)};
}

Outcome criterion_7() {
  const ProbeSpec reg = build_probe(ProbeKind::two_qubit_register, 2.0);
  const SpectralParams bath(0.5, 0.2);
  int psi_off = 0;
  double phi_worst = 0.0;
  for (double t : linspace(0.5, 30.0, 10))
    for (double T2 : linspace(0.2, 5.0, 10)) {
      for (PreparationLabel l : {PreparationLabel::bell_psi_plus, PreparationLabel::bell_psi_minus,
                                 PreparationLabel::bell_phi_plus, PreparationLabel::bell_phi_minus}) {
        const Scenario sc{reg, Preparation::named(reg.kind, l), bath, 0.0, T2, 0.5, 0.5, t};
        const DiscriminationOutput out = nonequilibrium_error(sc);
        if (l == PreparationLabel::bell_psi_plus || l == PreparationLabel::bell_psi_minus) {
          if (out.p_neq != 0.5) ++psi_off;
        } else {
          phi_worst = std::max(phi_worst, std::abs(out.p_neq - qutrit_qubit_like_error(out.gamma1, out.gamma2)));
        }
      }
    }
  return {psi_off == 0 && phi_worst <= kBellTol,
          "Psi points off 1/2: " + std::to_string(psi_off) + ", Phi vs qubit-like " + sci(phi_worst)};
}

Outcome criterion_8() {
  const Stopwatch sw;
  const SpectralParams bath(0.5, 0.2);
  const double omega0 = 2.0;
  double min_c = 1.0, max_42 = -1.0;
  int c_fail = 0, f42_fail = 0;
  std::string first_c_fail;
  for (double T2 : {0.5, 1.0, 2.0, 4.0})
    for (double t : {0.5, 1.0, 2.0, 5.0, 10.0}) {
      const GainInputs in{omega0, 0.0, T2, decoherence_exponent(bath, t, 0.0).value,
                          decoherence_exponent(bath, t, T2).value};
      const double ec = named_gain(GainKind::eta_c, in);
      const double e42 = named_gain(GainKind::eta42, in);
      min_c = std::min(min_c, ec);
      max_42 = std::max(max_42, e42);
      if (ec < 0.0) {
        if (c_fail++ == 0) first_c_fail = " (first at T2=" + sci(T2) + ", t=" + sci(t) + ")";
      }
      if (e42 > 0.0) ++f42_fail;
    }
  const double elapsed = sw.seconds();
  return {c_fail == 0 && f42_fail == 0 && elapsed < kBudget8,
          "min eta_c " + sci(min_c) + ", " + std::to_string(c_fail) + "/20 negative" + first_c_fail +
              "; max eta42 " + sci(max_42) + ", " + std::to_string(f42_fail) + "/20 positive; " + sci(elapsed) + " s"};
}

Outcome criterion_9() {
  const ProbeSpec q = build_probe(ProbeKind::qubit, 1.0);
  Scenario sc{q, Preparation::named(q.kind, PreparationLabel::max_coherent), SpectralParams(1.0, 1.0), 0.0, 1.0,
              0.5, 0.5, 0.0};
  const TimeOptimum opt = optimize_time(sc, 200.0);
  sc.t = 10.0 * opt.t_star;
  const double later = nonequilibrium_error(sc).p_neq;
  return {opt.t_star > 0.0 && opt.t_star < 200.0 && opt.p_star < 0.49 && later > opt.p_star,
          "t* = " + sci(opt.t_star) + ", p* = " + sci(opt.p_star) + ", p(10 t*) = " + sci(later)};
}

Outcome criterion_10() {
  int differ = 0;
  int nontrivial_phase = 0;
  for (const ChannelSample& c : channel_samples()) {
    const Scenario sc{build_probe(c.kind, 1.0), c.prep, SpectralParams(c.s, c.omega_c), c.T, c.T2, 0.5, 0.5, c.t};
    const DiscriminationOutput with = nonequilibrium_error(sc, {}, PhaseTreatment::compute);
    const DiscriminationOutput without = nonequilibrium_error(sc, {}, PhaseTreatment::skip);
    if (with.p_neq != without.p_neq) ++differ;
    if (std::abs(with.xi) > 1e-3) ++nontrivial_phase;
  }
  return {differ == 0, std::to_string(differ) + "/" + std::to_string(kChannelSamples) +
                           " samples differ (xi nonzero in " + std::to_string(nontrivial_phase) + ")"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome criterion_11() {
  const Stopwatch sw;
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "bathsense_acceptance_11";
  std::filesystem::create_directories(dir);
  const std::string grid =
      " sweep --probe qutrit --s 0.5 --omega-c 0.2 --omega0 2 --T1 0 --T2 'lin(0.2, 4, 20)' --t 'lin(0, 20, 20)'"
      " --xi compute";
  std::string files[2];
  int status[2];
  const int workers[2] = {1, 8};
  for (int k = 0; k < 2; ++k) {
    const auto out = dir / ("workers_" + std::to_string(workers[k]) + ".csv");
    std::filesystem::remove(out);
    const std::string cmd = std::string("'") + BATHSENSE_CLI + "'" + grid + " --workers " +
                            std::to_string(workers[k]) + " --out '" + out.string() + "'";
    status[k] = std::system(cmd.c_str());
    files[k] = slurp(out);
  }
  const double elapsed = sw.seconds();
  const auto rows = std::count(files[0].begin(), files[0].end(), '\n');
  const bool identical = !files[0].empty() && files[0] == files[1];
  return {status[0] == 0 && status[1] == 0 && identical && rows == 401 && elapsed < kBudget11,
          std::string(identical ? "identical" : "different") + " CSV (" + std::to_string(rows) + " lines), " +
              sci(elapsed) + " s"};
}

const std::vector<std::function<Outcome()>> kCriteria = {
    criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  if (selected.empty())
    for (int n = 1; n <= static_cast<int>(kCriteria.size()); ++n) selected.push_back(n);

  bool all = true;
  for (int n : selected) {
    if (n < 1 || n > static_cast<int>(kCriteria.size())) {
      std::cerr << "no criterion " << n << "\n";
      return 2;
    }
    Outcome o{false, ""};
    try {
      o = kCriteria[static_cast<std::size_t>(n - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
